//! Unsupervised segmentation by minimum description length, in the style of
//! the Morfessor baseline model.
//!
//! Cost of a model, in bits:
//!
//! - corpus cost: `N·log2 N − Σ c(m)·log2 c(m)`, i.e. `−Σ log2 p(m)` over
//!   morph tokens with `p(m) = c(m)/N`;
//! - lexicon cost: for every morph type, `Σ −log2 p(ch)` over its characters
//!   plus `−log2 p(#)` for the end of the morph.
//!
//! Morph counts are accumulated from dampened word frequencies
//! (`log`: `1 + ln f`, `ones`: `1`, `none`: `f`). The character distribution
//! (with `#` counted once per word) is estimated from the training words once
//! and kept fixed. Counts are held in fixed point with [`WEIGHT_SCALE`] units
//! per unit weight so that adding and removing a word is exact.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Analysis, Segmenter, WordFreqs};
use crate::error::{Error, Result};

/// Fixed-point units per unit of dampened weight.
pub const WEIGHT_SCALE: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Dampening {
    #[default]
    Log,
    Ones,
    None,
}

impl Dampening {
    pub fn weight(self, freq: u64) -> f64 {
        match self {
            Dampening::Log => 1.0 + (freq as f64).ln(),
            Dampening::Ones => 1.0,
            Dampening::None => freq as f64,
        }
    }

    fn units(self, freq: u64) -> u64 {
        (self.weight(freq) * WEIGHT_SCALE as f64).round() as u64
    }

    pub fn parse(s: &str) -> Result<Dampening> {
        match s {
            "log" => Ok(Dampening::Log),
            "ones" => Ok(Dampening::Ones),
            "none" => Ok(Dampening::None),
            _ => Err(Error::Argument(format!("unknown dampening {s:?}"))),
        }
    }
}

impl fmt::Display for Dampening {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dampening::Log => "log",
            Dampening::Ones => "ones",
            Dampening::None => "none",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MdlAlgorithm {
    #[default]
    Recursive,
    Viterbi,
}

impl MdlAlgorithm {
    pub fn parse(s: &str) -> Result<MdlAlgorithm> {
        match s {
            "recursive" => Ok(MdlAlgorithm::Recursive),
            "viterbi" => Ok(MdlAlgorithm::Viterbi),
            _ => Err(Error::Argument(format!("unknown algorithm {s:?}"))),
        }
    }
}

impl fmt::Display for MdlAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MdlAlgorithm::Recursive => "recursive",
            MdlAlgorithm::Viterbi => "viterbi",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MdlParams {
    /// Training stops once an epoch improves the cost by less than this
    /// many bits per word type.
    pub finish_threshold: f64,
    pub dampening: Dampening,
    pub algorithm: MdlAlgorithm,
    pub seed: u64,
    pub max_epochs: usize,
    /// Approximate output vocabulary cap: after training, the rarest
    /// multi-character morphs are pruned until at most this many types remain
    /// (single characters are never pruned).
    pub lexicon_cap: Option<usize>,
}

impl Default for MdlParams {
    fn default() -> Self {
        MdlParams {
            finish_threshold: 0.003,
            dampening: Dampening::Log,
            algorithm: MdlAlgorithm::Recursive,
            seed: 0,
            max_epochs: 25,
            lexicon_cap: None,
        }
    }
}

/// Fixed character distribution used for lexicon costs.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Alphabet {
    pub(crate) chars: BTreeMap<char, u64>,
    pub(crate) end: u64,
    total: f64,
}

impl Alphabet {
    pub(crate) fn new(chars: BTreeMap<char, u64>, end: u64) -> Alphabet {
        let total = (chars.values().sum::<u64>() + end) as f64;
        Alphabet { chars, end, total }
    }

    fn char_cost(&self, c: char) -> f64 {
        match self.chars.get(&c) {
            Some(&w) => self.total.log2() - (w as f64).log2(),
            // unseen characters get probability 1/(T+1)
            None => (self.total + 1.0).log2(),
        }
    }

    fn morph_cost(&self, morph: &str) -> f64 {
        let end = self.total.log2() - (self.end as f64).log2();
        morph.chars().map(|c| self.char_cost(c)).sum::<f64>() + end
    }
}

fn xlogx(units: u64) -> f64 {
    if units == 0 {
        0.0
    } else {
        let x = units as f64 / WEIGHT_SCALE as f64;
        x * x.log2()
    }
}

/// A trained morph lexicon with its hyperparameters.
#[derive(Debug, Clone, PartialEq)]
pub struct MdlModel {
    pub(crate) params: MdlParams,
    pub(crate) lexicon: BTreeMap<String, u64>,
    pub(crate) alphabet: Alphabet,
    pub(crate) total_units: u64,
}

impl MdlModel {
    pub(crate) fn from_parts(
        params: MdlParams,
        lexicon: BTreeMap<String, u64>,
        alphabet: Alphabet,
    ) -> MdlModel {
        let total_units = lexicon.values().sum();
        MdlModel {
            params,
            lexicon,
            alphabet,
            total_units,
        }
    }

    pub fn params(&self) -> &MdlParams {
        &self.params
    }

    /// Morph → fixed-point count (see [`WEIGHT_SCALE`]).
    pub fn lexicon(&self) -> &BTreeMap<String, u64> {
        &self.lexicon
    }

    pub fn count(&self, morph: &str) -> Option<f64> {
        self.lexicon
            .get(morph)
            .map(|&u| u as f64 / WEIGHT_SCALE as f64)
    }

    /// Lexicon cost of one morph type (its spelling).
    pub fn spelling_cost(&self, morph: &str) -> f64 {
        self.alphabet.morph_cost(morph)
    }

    /// Decoding cost of one morph: `−log2 p(m)` for lexicon morphs; other
    /// strings pay their spelling cost plus the cost of a count-one morph.
    pub fn morph_cost(&self, morph: &str) -> f64 {
        let n = (self.total_units.max(WEIGHT_SCALE) as f64 / WEIGHT_SCALE as f64).log2();
        match self.lexicon.get(morph) {
            Some(&u) => n - (u as f64 / WEIGHT_SCALE as f64).log2(),
            None => n + self.alphabet.morph_cost(morph),
        }
    }

    /// Total description length of the lexicon and the corpus it encodes.
    pub fn total_cost(&self) -> f64 {
        let corpus = xlogx(self.total_units) - self.lexicon.values().map(|&u| xlogx(u)).sum::<f64>();
        let lexicon: f64 = self.lexicon.keys().map(|m| self.alphabet.morph_cost(m)).sum();
        corpus + lexicon
    }

    /// Lowest-cost segmentation by dynamic programming over [`Self::morph_cost`].
    /// On equal cost the longest final morph wins.
    pub fn segment(&self, token: &str) -> Analysis {
        let bounds: Vec<usize> = token
            .char_indices()
            .map(|(i, _)| i)
            .chain(std::iter::once(token.len()))
            .collect();
        let n = bounds.len() - 1;
        let mut best = vec![f64::INFINITY; n + 1];
        let mut back = vec![0usize; n + 1];
        best[0] = 0.0;
        for j in 1..=n {
            for i in 0..j {
                let cost = best[i] + self.morph_cost(&token[bounds[i]..bounds[j]]);
                if cost < best[j] {
                    best[j] = cost;
                    back[j] = i;
                }
            }
        }
        let mut morphs = Vec::new();
        let mut j = n;
        while j > 0 {
            let i = back[j];
            morphs.push(token[bounds[i]..bounds[j]].to_string());
            j = i;
        }
        morphs.reverse();
        Analysis::new(morphs).unwrap_or_else(|| Analysis::whole(token))
    }
}

impl Segmenter for MdlModel {
    fn segment(&self, token: &str) -> Analysis {
        MdlModel::segment(self, token)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MdlTrainReport {
    /// Cost of the model where every word is its own morph.
    pub baseline_cost: f64,
    /// Cost after each epoch; non-increasing.
    pub epoch_costs: Vec<f64>,
    /// Final segmentation of every training word.
    pub analyses: BTreeMap<String, Analysis>,
}

struct Trainer {
    alphabet: Alphabet,
    counts: HashMap<String, u64>,
    total: u64,
    sum_xlogx: f64,
    lexicon_cost: f64,
}

impl Trainer {
    fn add(&mut self, morph: &str, units: u64) {
        let entry = self.counts.entry(morph.to_string()).or_insert(0);
        let old = *entry;
        *entry += units;
        self.sum_xlogx += xlogx(old + units) - xlogx(old);
        if old == 0 {
            self.lexicon_cost += self.alphabet.morph_cost(morph);
        }
        self.total += units;
    }

    fn remove(&mut self, morph: &str, units: u64) {
        let old = self.counts[morph];
        let new = old - units;
        self.sum_xlogx += xlogx(new) - xlogx(old);
        if new == 0 {
            self.counts.remove(morph);
            self.lexicon_cost -= self.alphabet.morph_cost(morph);
        } else {
            self.counts.insert(morph.to_string(), new);
        }
        self.total -= units;
    }

    fn cost(&self) -> f64 {
        xlogx(self.total) - self.sum_xlogx + self.lexicon_cost
    }

    /// Cost recomputed from scratch in a fixed order.
    fn exact_cost(&self) -> f64 {
        let mut types: Vec<(&String, &u64)> = self.counts.iter().collect();
        types.sort();
        let corpus = xlogx(self.total) - types.iter().map(|(_, &u)| xlogx(u)).sum::<f64>();
        let lexicon: f64 = types.iter().map(|(m, _)| self.alphabet.morph_cost(m)).sum();
        corpus + lexicon
    }

    fn recursive_split(&mut self, word: &str, units: u64, out: &mut Vec<String>) {
        let bounds: Vec<usize> = word.char_indices().map(|(i, _)| i).skip(1).collect();
        if bounds.is_empty() {
            self.add(word, units);
            out.push(word.to_string());
            return;
        }
        self.add(word, units);
        let mut best = self.cost();
        self.remove(word, units);
        let mut split = None;
        for &b in &bounds {
            let (pre, suf) = word.split_at(b);
            self.add(pre, units);
            self.add(suf, units);
            let c = self.cost();
            self.remove(suf, units);
            self.remove(pre, units);
            if c < best - 1e-12 {
                best = c;
                split = Some(b);
            }
        }
        match split {
            None => {
                self.add(word, units);
                out.push(word.to_string());
            }
            Some(b) => {
                let (pre, suf) = word.split_at(b);
                self.recursive_split(pre, units, out);
                self.recursive_split(suf, units, out);
            }
        }
    }

    fn viterbi(&self, word: &str, banned: &dyn Fn(&str) -> bool) -> Vec<String> {
        let n_log = (self.total.max(WEIGHT_SCALE) as f64 / WEIGHT_SCALE as f64).log2();
        let cost_of = |m: &str| -> f64 {
            match self.counts.get(m) {
                Some(&u) if !banned(m) => n_log - (u as f64 / WEIGHT_SCALE as f64).log2(),
                _ if banned(m) && m.chars().count() > 1 => f64::INFINITY,
                _ => n_log + self.alphabet.morph_cost(m),
            }
        };
        let bounds: Vec<usize> = word
            .char_indices()
            .map(|(i, _)| i)
            .chain(std::iter::once(word.len()))
            .collect();
        let n = bounds.len() - 1;
        let mut best = vec![f64::INFINITY; n + 1];
        let mut back = vec![0usize; n + 1];
        best[0] = 0.0;
        for j in 1..=n {
            for i in 0..j {
                let c = best[i] + cost_of(&word[bounds[i]..bounds[j]]);
                if c < best[j] {
                    best[j] = c;
                    back[j] = i;
                }
            }
        }
        let mut morphs = Vec::new();
        let mut j = n;
        while j > 0 {
            morphs.push(word[bounds[back[j]]..bounds[j]].to_string());
            j = back[j];
        }
        morphs.reverse();
        morphs
    }
}

pub fn train_mdl(word_freqs: &WordFreqs, params: &MdlParams) -> Result<MdlModel> {
    train_mdl_with_report(word_freqs, params).map(|(m, _)| m)
}

pub fn train_mdl_with_report(
    word_freqs: &WordFreqs,
    params: &MdlParams,
) -> Result<(MdlModel, MdlTrainReport)> {
    if params.finish_threshold.is_nan() || params.finish_threshold <= 0.0 {
        return Err(Error::Argument(format!(
            "finish threshold must be positive, got {}",
            params.finish_threshold
        )));
    }
    let words: Vec<(String, u64)> = word_freqs
        .iter()
        .filter(|(w, &f)| f > 0 && !w.is_empty())
        .map(|(w, &f)| (w.clone(), params.dampening.units(f)))
        .collect();
    if words.is_empty() {
        return Err(Error::EmptyInput("no training words".into()));
    }

    let mut chars: BTreeMap<char, u64> = BTreeMap::new();
    let mut end = 0u64;
    for (w, units) in &words {
        for c in w.chars() {
            *chars.entry(c).or_insert(0) += units;
        }
        end += units;
    }
    let mut t = Trainer {
        alphabet: Alphabet::new(chars, end),
        counts: HashMap::new(),
        total: 0,
        sum_xlogx: 0.0,
        lexicon_cost: 0.0,
    };
    let mut analyses: Vec<Vec<String>> = Vec::with_capacity(words.len());
    for (w, units) in &words {
        t.add(w, *units);
        analyses.push(vec![w.clone()]);
    }

    let baseline_cost = t.exact_cost();
    let mut epoch_costs = Vec::new();
    let mut prev = baseline_cost;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut order: Vec<usize> = (0..words.len()).collect();
    let no_ban = |_: &str| false;

    for _ in 0..params.max_epochs.max(1) {
        order.shuffle(&mut rng);
        for &i in &order {
            let (word, units) = (&words[i].0, words[i].1);
            let before = t.cost();
            let old = std::mem::take(&mut analyses[i]);
            for m in &old {
                t.remove(m, units);
            }
            let new = match params.algorithm {
                MdlAlgorithm::Recursive => {
                    let mut out = Vec::new();
                    t.recursive_split(word, units, &mut out);
                    out
                }
                MdlAlgorithm::Viterbi => {
                    let out = t.viterbi(word, &no_ban);
                    for m in &out {
                        t.add(m, units);
                    }
                    out
                }
            };
            // keep a new analysis only if it actually lowers the cost
            if new != old && t.cost() > before - 1e-9 {
                for m in &new {
                    t.remove(m, units);
                }
                for m in &old {
                    t.add(m, units);
                }
                analyses[i] = old;
            } else {
                analyses[i] = new;
            }
        }
        affix_pass(&mut t, &words, &mut analyses);
        let cost = t.exact_cost();
        epoch_costs.push(cost);
        if prev - cost < params.finish_threshold * words.len() as f64 {
            break;
        }
        prev = cost;
    }

    if let Some(cap) = params.lexicon_cap {
        prune_lexicon(&mut t, &words, &mut analyses, cap);
        epoch_costs.push(t.exact_cost());
    }

    let lexicon: BTreeMap<String, u64> = t.counts.iter().map(|(m, &u)| (m.clone(), u)).collect();
    let model = MdlModel::from_parts(params.clone(), lexicon, t.alphabet.clone());
    let analyses = words
        .iter()
        .zip(analyses)
        .map(|((w, _), a)| (w.clone(), Analysis::new(a).expect("nonempty analysis")))
        .collect();
    Ok((
        model,
        MdlTrainReport {
            baseline_cost,
            epoch_costs,
            analyses,
        },
    ))
}

/// Candidate affixes tried per side and epoch.
const AFFIX_CANDIDATES: usize = 64;

/// Batch move that the word-by-word search cannot make on its own: split a
/// suffix (or prefix) shared by several morph types off all of them at once,
/// keeping the change only if the total cost drops.
fn affix_pass(t: &mut Trainer, words: &[(String, u64)], analyses: &mut [Vec<String>]) {
    for suffix_side in [true, false] {
        let mut shared: HashMap<String, usize> = HashMap::new();
        for m in t.counts.keys() {
            let bounds: Vec<usize> = m.char_indices().map(|(i, _)| i).skip(1).collect();
            for b in bounds {
                let affix = if suffix_side { &m[b..] } else { &m[..b] };
                *shared.entry(affix.to_string()).or_insert(0) += 1;
            }
        }
        let mut candidates: Vec<(String, usize)> = shared.into_iter().filter(|(_, n)| *n >= 2).collect();
        candidates.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        candidates.truncate(AFFIX_CANDIDATES);
        for (affix, _) in candidates {
            let split = |m: &str| -> Option<(String, String)> {
                if m.len() <= affix.len() {
                    return None;
                }
                if suffix_side {
                    m.strip_suffix(affix.as_str()).map(|rest| (rest.to_string(), affix.clone()))
                } else {
                    m.strip_prefix(affix.as_str()).map(|rest| (affix.clone(), rest.to_string()))
                }
            };
            let before = t.cost();
            let mut changed: Vec<(usize, Vec<String>)> = Vec::new();
            for (i, (_, units)) in words.iter().enumerate() {
                if !analyses[i].iter().any(|m| split(m).is_some()) {
                    continue;
                }
                let new: Vec<String> = analyses[i]
                    .iter()
                    .flat_map(|m| match split(m) {
                        Some((a, b)) => vec![a, b],
                        None => vec![m.clone()],
                    })
                    .collect();
                for m in &analyses[i] {
                    t.remove(m, *units);
                }
                for m in &new {
                    t.add(m, *units);
                }
                changed.push((i, std::mem::replace(&mut analyses[i], new)));
            }
            if !changed.is_empty() && t.cost() > before - 1e-9 {
                for (i, old) in changed {
                    let units = words[i].1;
                    for m in &analyses[i] {
                        t.remove(m, units);
                    }
                    for m in &old {
                        t.add(m, units);
                    }
                    analyses[i] = old;
                }
            }
        }
    }
}

/// Greedy pruning of the rarest multi-character morphs; affected words are
/// re-segmented over what remains.
fn prune_lexicon(t: &mut Trainer, words: &[(String, u64)], analyses: &mut [Vec<String>], cap: usize) {
    let mut banned: std::collections::HashSet<String> = std::collections::HashSet::new();
    while t.counts.len() > cap {
        let victim = t
            .counts
            .iter()
            .filter(|(m, _)| m.chars().count() > 1)
            .min_by(|a, b| a.1.cmp(b.1).then_with(|| b.0.cmp(a.0)))
            .map(|(m, _)| m.clone());
        let Some(victim) = victim else { break };
        banned.insert(victim.clone());
        for (i, (word, units)) in words.iter().enumerate() {
            if !analyses[i].contains(&victim) {
                continue;
            }
            for m in &analyses[i] {
                t.remove(m, *units);
            }
            let is_banned = |m: &str| banned.contains(m);
            let new = t.viterbi(word, &is_banned);
            for m in &new {
                t.add(m, *units);
            }
            analyses[i] = new;
        }
    }
}
