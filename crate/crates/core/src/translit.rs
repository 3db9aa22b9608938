//! Buckwalter transliteration: a one-to-one ASCII romanization of Arabic script.
//!
//! Only used for display and for writing Arabic test fixtures legibly; the
//! segmenters themselves work on Arabic script.

const TABLE: &[(char, char)] = &[
    ('\u{0621}', '\''),
    ('\u{0622}', '|'),
    ('\u{0623}', '>'),
    ('\u{0624}', '&'),
    ('\u{0625}', '<'),
    ('\u{0626}', '}'),
    ('\u{0627}', 'A'),
    ('\u{0628}', 'b'),
    ('\u{0629}', 'p'),
    ('\u{062A}', 't'),
    ('\u{062B}', 'v'),
    ('\u{062C}', 'j'),
    ('\u{062D}', 'H'),
    ('\u{062E}', 'x'),
    ('\u{062F}', 'd'),
    ('\u{0630}', '*'),
    ('\u{0631}', 'r'),
    ('\u{0632}', 'z'),
    ('\u{0633}', 's'),
    ('\u{0634}', '$'),
    ('\u{0635}', 'S'),
    ('\u{0636}', 'D'),
    ('\u{0637}', 'T'),
    ('\u{0638}', 'Z'),
    ('\u{0639}', 'E'),
    ('\u{063A}', 'g'),
    ('\u{0640}', '_'),
    ('\u{0641}', 'f'),
    ('\u{0642}', 'q'),
    ('\u{0643}', 'k'),
    ('\u{0644}', 'l'),
    ('\u{0645}', 'm'),
    ('\u{0646}', 'n'),
    ('\u{0647}', 'h'),
    ('\u{0648}', 'w'),
    ('\u{0649}', 'Y'),
    ('\u{064A}', 'y'),
    ('\u{064B}', 'F'),
    ('\u{064C}', 'N'),
    ('\u{064D}', 'K'),
    ('\u{064E}', 'a'),
    ('\u{064F}', 'u'),
    ('\u{0650}', 'i'),
    ('\u{0651}', '~'),
    ('\u{0652}', 'o'),
    ('\u{0670}', '`'),
    ('\u{0671}', '{'),
];

/// Arabic script to Buckwalter. Characters outside the table pass through.
pub fn to_buckwalter(text: &str) -> String {
    text.chars()
        .map(|c| {
            TABLE
                .iter()
                .find(|(ar, _)| *ar == c)
                .map_or(c, |&(_, bw)| bw)
        })
        .collect()
}

/// Buckwalter to Arabic script. Every ASCII character with a table entry is
/// converted, so Latin text must not be passed through this function.
pub fn from_buckwalter(text: &str) -> String {
    text.chars()
        .map(|c| {
            TABLE
                .iter()
                .find(|(_, bw)| *bw == c)
                .map_or(c, |&(ar, _)| ar)
        })
        .collect()
}
