//! Byte-pair encoding over characters with a word-final end marker.
//!
//! Training greedily merges the most frequent adjacent symbol pair; ties go to
//! the lexicographically smallest `(left, right)` pair. Application replays
//! the merges in their recorded order and strips the end marker from the last
//! morph.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap, HashSet};

use super::{Analysis, Segmenter, WordFreqs};
use crate::error::{Error, Result};

/// U+2581 LOWER ONE EIGHTH BLOCK.
pub const DEFAULT_MARKER: char = '\u{2581}';

#[derive(Debug, Clone)]
pub struct BpeModel {
    alphabet: Vec<String>,
    merges: Vec<(String, String)>,
    marker: char,
    vocab_size: usize,
    symbols: HashMap<String, u32>,
    // (left, right) -> (rank, merged symbol)
    table: HashMap<(u32, u32), (usize, u32)>,
}

impl PartialEq for BpeModel {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet && self.merges == other.merges && self.marker == other.marker
    }
}

struct Interner {
    ids: HashMap<String, u32>,
    names: Vec<String>,
}

impl Interner {
    fn new() -> Self {
        Interner {
            ids: HashMap::new(),
            names: Vec::new(),
        }
    }

    fn intern(&mut self, s: &str) -> u32 {
        if let Some(&id) = self.ids.get(s) {
            return id;
        }
        let id = self.names.len() as u32;
        self.names.push(s.to_string());
        self.ids.insert(s.to_string(), id);
        id
    }
}

impl BpeModel {
    /// Builds a model from its parts, checking that every merge is unique and
    /// only uses symbols that exist by the time it is applied.
    pub fn from_parts(
        alphabet: Vec<String>,
        merges: Vec<(String, String)>,
        marker: char,
    ) -> Result<BpeModel> {
        let mut interner = Interner::new();
        let mut known: HashSet<String> = HashSet::new();
        for sym in &alphabet {
            if sym.chars().count() != 1 {
                return Err(Error::Argument(format!("alphabet entry {sym:?} is not one character")));
            }
            interner.intern(sym);
            known.insert(sym.clone());
        }
        interner.intern(&marker.to_string());
        known.insert(marker.to_string());
        let mut table = HashMap::new();
        for (rank, (l, r)) in merges.iter().enumerate() {
            if !known.contains(l) || !known.contains(r) {
                return Err(Error::Argument(format!(
                    "merge {rank} ({l} {r}) uses an unknown symbol"
                )));
            }
            let key = (interner.intern(l), interner.intern(r));
            let merged = format!("{l}{r}");
            let id = interner.intern(&merged);
            known.insert(merged);
            if table.insert(key, (rank, id)).is_some() {
                return Err(Error::Argument(format!("duplicate merge ({l} {r})")));
            }
        }
        Ok(BpeModel {
            vocab_size: known.len(),
            alphabet,
            merges,
            marker,
            symbols: interner.ids,
            table,
        })
    }

    pub fn merges(&self) -> &[(String, String)] {
        &self.merges
    }

    /// Initial characters, excluding the end marker, sorted.
    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn marker(&self) -> char {
        self.marker
    }

    /// Size of alphabet ∪ {marker} ∪ merge results.
    pub fn vocab_size(&self) -> usize {
        self.vocab_size
    }

    /// Every symbol, with the end marker still attached.
    pub fn vocabulary(&self) -> BTreeSet<String> {
        let mut v: BTreeSet<String> = self.alphabet.iter().cloned().collect();
        v.insert(self.marker.to_string());
        v.extend(self.merges.iter().map(|(l, r)| format!("{l}{r}")));
        v
    }

    /// Symbols as they can appear in output: marker stripped, empty dropped.
    pub fn output_vocabulary(&self) -> BTreeSet<String> {
        self.vocabulary()
            .into_iter()
            .filter_map(|s| {
                let s = s.strip_suffix(self.marker).map(str::to_string).unwrap_or(s);
                (!s.is_empty()).then_some(s)
            })
            .collect()
    }

    /// Symbol sequence for `token` after replaying every merge, end marker included.
    pub fn apply_symbols(&self, token: &str) -> Vec<String> {
        let mut syms: Vec<(Option<u32>, String)> = token
            .chars()
            .chain(std::iter::once(self.marker))
            .map(|c| {
                let s = c.to_string();
                (self.symbols.get(&s).copied(), s)
            })
            .collect();
        // Equivalent to replaying merges one by one: jump to the lowest-ranked
        // merge at or after the cursor that occurs in the word.
        let mut cursor = 0usize;
        loop {
            let mut best: Option<(usize, u32, u32, u32)> = None;
            for w in syms.windows(2) {
                if let (Some(a), Some(b)) = (w[0].0, w[1].0) {
                    if let Some(&(rank, merged)) = self.table.get(&(a, b)) {
                        if rank >= cursor && best.is_none_or(|(r, ..)| rank < r) {
                            best = Some((rank, a, b, merged));
                        }
                    }
                }
            }
            let Some((rank, a, b, merged)) = best else {
                break;
            };
            let mut out = Vec::with_capacity(syms.len());
            let mut i = 0;
            while i < syms.len() {
                if i + 1 < syms.len() && syms[i].0 == Some(a) && syms[i + 1].0 == Some(b) {
                    let text = format!("{}{}", syms[i].1, syms[i + 1].1);
                    out.push((Some(merged), text));
                    i += 2;
                } else {
                    out.push(std::mem::take(&mut syms[i]));
                    i += 1;
                }
            }
            syms = out;
            cursor = rank + 1;
        }
        syms.into_iter().map(|(_, s)| s).collect()
    }

    pub fn segment(&self, token: &str) -> Analysis {
        let mut morphs = self.apply_symbols(token);
        let last = morphs.pop().expect("at least the end marker");
        let stripped = last
            .strip_suffix(self.marker)
            .expect("the end marker is always the final character");
        if !stripped.is_empty() {
            morphs.push(stripped.to_string());
        }
        Analysis::new(morphs).unwrap_or_else(|| Analysis::whole(token))
    }
}

impl Segmenter for BpeModel {
    fn segment(&self, token: &str) -> Analysis {
        BpeModel::segment(self, token)
    }
}

/// Learns merges until the vocabulary reaches `vocab_size` or no pair occurs
/// at least twice.
pub fn train_bpe(word_freqs: &WordFreqs, vocab_size: usize, marker: char) -> Result<BpeModel> {
    if word_freqs.is_empty() {
        return Err(Error::EmptyInput("no training words".into()));
    }
    let mut interner = Interner::new();
    let alphabet: BTreeSet<String> = word_freqs
        .keys()
        .flat_map(|w| w.chars())
        .filter(|&c| c != marker)
        .map(|c| c.to_string())
        .collect();
    let mut vocab: HashSet<String> = alphabet.iter().cloned().collect();
    vocab.insert(marker.to_string());
    if vocab_size < vocab.len() {
        return Err(Error::Argument(format!(
            "vocabulary size {vocab_size} is below the alphabet size {}",
            vocab.len()
        )));
    }
    for s in &alphabet {
        interner.intern(s);
    }
    let marker_id = interner.intern(&marker.to_string());

    let mut words: Vec<(Vec<u32>, i64)> = word_freqs
        .iter()
        .filter(|(_, &f)| f > 0)
        .map(|(w, &f)| {
            let mut syms: Vec<u32> = w.chars().map(|c| interner.intern(&c.to_string())).collect();
            syms.push(marker_id);
            (syms, f as i64)
        })
        .collect();

    let mut counts: HashMap<(u32, u32), i64> = HashMap::new();
    let mut occurs: HashMap<(u32, u32), BTreeSet<usize>> = HashMap::new();
    for (idx, (syms, f)) in words.iter().enumerate() {
        for w in syms.windows(2) {
            let key = (w[0], w[1]);
            *counts.entry(key).or_insert(0) += f;
            occurs.entry(key).or_default().insert(idx);
        }
    }

    type Entry = (i64, Reverse<(String, String)>, (u32, u32));
    let entry = |interner: &Interner, key: (u32, u32), count: i64| -> Entry {
        let names = (
            interner.names[key.0 as usize].clone(),
            interner.names[key.1 as usize].clone(),
        );
        (count, Reverse(names), key)
    };
    let mut heap: BinaryHeap<Entry> = counts
        .iter()
        .map(|(&key, &count)| entry(&interner, key, count))
        .collect();

    let mut merges = Vec::new();
    while vocab.len() < vocab_size {
        let Some((count, Reverse((left, right)), key)) = heap.pop() else {
            break;
        };
        if counts.get(&key).copied() != Some(count) {
            continue; // stale
        }
        if count < 2 {
            break;
        }
        let merged = format!("{left}{right}");
        let merged_id = interner.intern(&merged);
        vocab.insert(merged);
        merges.push((left, right));

        let mut touched: HashSet<(u32, u32)> = HashSet::new();
        let holders: Vec<usize> = occurs.get(&key).map(|s| s.iter().copied().collect()).unwrap_or_default();
        for idx in holders {
            let (syms, f) = &mut words[idx];
            if !syms.windows(2).any(|w| (w[0], w[1]) == key) {
                continue;
            }
            for w in syms.windows(2) {
                let k = (w[0], w[1]);
                *counts.get_mut(&k).unwrap() -= *f;
                touched.insert(k);
            }
            let mut out = Vec::with_capacity(syms.len());
            let mut i = 0;
            while i < syms.len() {
                if i + 1 < syms.len() && (syms[i], syms[i + 1]) == key {
                    out.push(merged_id);
                    i += 2;
                } else {
                    out.push(syms[i]);
                    i += 1;
                }
            }
            *syms = out;
            for w in syms.windows(2) {
                let k = (w[0], w[1]);
                *counts.entry(k).or_insert(0) += *f;
                occurs.entry(k).or_default().insert(idx);
                touched.insert(k);
            }
        }
        let mut touched: Vec<_> = touched.into_iter().collect();
        touched.sort_unstable();
        for k in touched {
            let c = counts[&k];
            if c <= 0 {
                counts.remove(&k);
                occurs.remove(&k);
            } else {
                heap.push(entry(&interner, k, c));
            }
        }
    }

    BpeModel::from_parts(alphabet.into_iter().collect(), merges, marker)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::segment::word_freqs;

    fn freqs(pairs: &[(&str, u64)]) -> WordFreqs {
        pairs.iter().map(|&(w, f)| (w.to_string(), f)).collect()
    }

    fn merges(m: &BpeModel) -> Vec<(&str, &str)> {
        m.merges().iter().map(|(l, r)| (l.as_str(), r.as_str())).collect()
    }

    #[test]
    fn two_merge_toy_example() {
        // words "ab_" x2 and "ac_" x1, alphabet {a, b, c, _}
        let m = train_bpe(&freqs(&[("ab", 2), ("ac", 1)]), 6, '_').unwrap();
        assert_eq!(merges(&m), [("a", "b"), ("ab", "_")]);
        assert_eq!(m.segment("ab").morphs(), ["ab"]);
        assert_eq!(m.segment("ac").morphs(), ["a", "c"]);
    }

    #[test]
    fn alphabet_sized_vocab_learns_nothing() {
        let m = train_bpe(&freqs(&[("a", 1)]), 2, '_').unwrap();
        assert!(m.merges().is_empty());
        assert_eq!(m.vocab_size(), 2);
    }

    #[test]
    fn vocab_below_alphabet_rejected() {
        let err = train_bpe(&freqs(&[("abc", 3)]), 3, '_');
        assert!(matches!(err, Err(Error::Argument(_))));
        assert!(matches!(
            train_bpe(&WordFreqs::new(), 10, '_'),
            Err(Error::EmptyInput(_))
        ));
    }

    #[test]
    fn stops_when_no_pair_repeats() {
        let m = train_bpe(&freqs(&[("abcd", 1)]), 100, '_').unwrap();
        assert!(m.merges().is_empty());
    }

    #[test]
    fn unseen_character_stays_single() {
        let m = train_bpe(&freqs(&[("ab", 2), ("ac", 1)]), 6, '_').unwrap();
        assert_eq!(m.segment("z").morphs(), ["z"]);
        assert_eq!(m.segment("zab").morphs(), ["z", "ab"]);
    }

    #[test]
    fn vocabulary_matches_replay() {
        let text = "the cat sat on the mat the cats sat on the mats";
        let f = word_freqs(text.split(' '));
        let m = train_bpe(&f, 20, DEFAULT_MARKER).unwrap();
        assert!(m.vocab_size() <= 20);
        let mut seen: BTreeSet<String> = m.alphabet().iter().cloned().collect();
        seen.insert(DEFAULT_MARKER.to_string());
        // replaying each merge prefix on the corpus shows every recorded symbol
        for w in f.keys() {
            seen.extend(m.apply_symbols(w));
        }
        assert!(seen.is_subset(&m.vocabulary()));
        assert_eq!(m.vocabulary().len(), m.vocab_size());
    }

    #[test]
    fn rank_jump_matches_sequential_replay() {
        let text = "aaaa abab baba aabb abba bbaa aaab";
        let f = word_freqs(text.split(' '));
        let m = train_bpe(&f, 30, '_').unwrap();
        for w in f.keys().map(String::as_str).chain(["aaaaaa", "babab", "ba"]) {
            let mut syms: Vec<String> = w.chars().map(|c| c.to_string()).collect();
            syms.push("_".into());
            for (l, r) in m.merges() {
                let mut out = Vec::new();
                let mut i = 0;
                while i < syms.len() {
                    if i + 1 < syms.len() && &syms[i] == l && &syms[i + 1] == r {
                        out.push(format!("{l}{r}"));
                        i += 2;
                    } else {
                        out.push(syms[i].clone());
                        i += 1;
                    }
                }
                syms = out;
            }
            assert_eq!(m.apply_symbols(w), syms, "word {w}");
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn concatenation_restores_token(
                corpus in proptest::collection::vec("[a-e]{1,6}", 1..30),
                token in "[a-gé]{1,10}",
                vocab in 0usize..40,
            ) {
                let f = word_freqs(corpus.iter().map(String::as_str));
                let alpha = f.keys().flat_map(|w| w.chars()).collect::<BTreeSet<_>>().len() + 1;
                let m = train_bpe(&f, alpha + vocab, DEFAULT_MARKER).unwrap();
                let a = m.segment(&token);
                prop_assert_eq!(a.surface(), token);
            }

            #[test]
            fn deterministic(corpus in proptest::collection::vec("[a-d]{1,5}", 1..20)) {
                let f = word_freqs(corpus.iter().map(String::as_str));
                let a = train_bpe(&f, 25, DEFAULT_MARKER).unwrap();
                let b = train_bpe(&f, 25, DEFAULT_MARKER).unwrap();
                prop_assert_eq!(a.merges(), b.merges());
            }
        }
    }
}
