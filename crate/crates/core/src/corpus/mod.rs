//! Corpus ingestion: preprocessing, gold annotations, script classes,
//! sentence categories, statistics and subsampling.

mod category;
#[allow(clippy::tabs_in_doc_comments)] // the gold format is tab-separated
mod gold;
mod preprocess;
mod sample;
mod script;
mod stats;

pub use category::{
    categorize, english_percentage, morphological_richness, McsDetector, McsMode,
    SentenceCategory,
};
pub use gold::{load_gold, parse_gold, GoldEntry, GoldSentence};
pub(crate) use gold::split_escaped;
pub use preprocess::{
    decode_lines, default_markup, preprocess, preprocess_corpus, preprocess_parallel,
    preprocess_tokens, read_lines, ArabicNorm, PreprocessOptions, RESERVED,
};
pub use sample::{sample_size, subsample, subsample_indices};
pub use script::{classify_script, is_arabic_char, is_latin_char, is_letter, Lang, Script, Token};
pub use stats::{corpus_stats, CorpusStats, LangStats};

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sentence {
    pub id: usize,
    pub tokens: Vec<Token>,
}

impl Sentence {
    /// Builds a sentence from already tokenized, space separated text.
    pub fn from_tokenized(id: usize, line: &str) -> Option<Sentence> {
        let tokens: Vec<Token> = line
            .split_whitespace()
            .map(|t| Token::new(t).expect("split_whitespace yields valid tokens"))
            .collect();
        (!tokens.is_empty()).then_some(Sentence { id, tokens })
    }

    pub fn render(&self) -> String {
        self.tokens
            .iter()
            .map(Token::surface)
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}
