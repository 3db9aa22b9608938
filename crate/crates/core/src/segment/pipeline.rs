//! Composition of segmenters and per-script routing.
//!
//! A pipeline runs its stages in order. The first stage splits the token and
//! every later stage splits each morph on its own, so a later stage can never
//! merge across an earlier boundary. Tokens holding an escaped reserved
//! character (`\#`, `\@`, `\\`) always pass through whole so that escapes are
//! never split.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::{Analysis, Segmenter, SegmenterModel};
use crate::corpus::{classify_script, Script, Sentence};

#[derive(Debug, Clone, PartialEq)]
pub enum Stage {
    Model(Arc<SegmenterModel>),
    Route(Router),
}

impl Stage {
    pub fn model(model: SegmenterModel) -> Stage {
        Stage::Model(Arc::new(model))
    }

    fn segment(&self, morph: &str) -> Analysis {
        match self {
            Stage::Model(m) => m.segment(morph),
            Stage::Route(r) => r.segment(morph),
        }
    }

    fn models<'a>(&'a self, out: &mut Vec<&'a SegmenterModel>) {
        match self {
            Stage::Model(m) => out.push(m),
            Stage::Route(r) => {
                for p in r.routes.values().chain(std::iter::once(&r.default)) {
                    for s in &p.stages {
                        s.models(out);
                    }
                }
            }
        }
    }
}

/// Sends each token to the pipeline registered for its script class;
/// anything unregistered goes to `default` (identity unless set).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Router {
    pub routes: BTreeMap<Script, Pipeline>,
    pub default: Pipeline,
}

impl Router {
    pub fn new() -> Router {
        Router::default()
    }

    pub fn with(mut self, script: Script, pipeline: Pipeline) -> Router {
        self.routes.insert(script, pipeline);
        self
    }

    pub fn with_default(mut self, pipeline: Pipeline) -> Router {
        self.default = pipeline;
        self
    }

    pub fn segment(&self, token: &str) -> Analysis {
        let script = classify_script(token);
        self.routes.get(&script).unwrap_or(&self.default).segment(token)
    }
}

/// Ordered stages; an empty pipeline is the identity.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Pipeline {
    pub stages: Vec<Stage>,
}

impl Pipeline {
    pub fn identity() -> Pipeline {
        Pipeline::default()
    }

    pub fn new(stages: Vec<Stage>) -> Pipeline {
        Pipeline { stages }
    }

    pub fn single(model: SegmenterModel) -> Pipeline {
        Pipeline::new(vec![Stage::model(model)])
    }

    pub fn then(mut self, stage: Stage) -> Pipeline {
        self.stages.push(stage);
        self
    }

    pub fn segment(&self, token: &str) -> Analysis {
        if token.contains('\\') {
            return Analysis::whole(token);
        }
        let mut morphs = vec![token.to_string()];
        for stage in &self.stages {
            morphs = morphs
                .iter()
                .flat_map(|m| stage.segment(m).into_morphs())
                .collect();
        }
        Analysis::new(morphs).expect("segmenters never return empty analyses")
    }

    pub fn segment_sentence(&self, sentence: &Sentence) -> Vec<Analysis> {
        sentence.tokens.iter().map(|t| self.segment(t.surface())).collect()
    }

    /// All models reachable from this pipeline, in stage order.
    pub fn models(&self) -> Vec<&SegmenterModel> {
        let mut out = Vec::new();
        for s in &self.stages {
            s.models(&mut out);
        }
        out
    }

    /// Union of the models' intrinsic vocabularies.
    pub fn intrinsic_vocabulary(&self) -> BTreeSet<String> {
        self.models()
            .into_iter()
            .flat_map(|m| m.intrinsic_vocabulary())
            .collect()
    }
}

impl Segmenter for Pipeline {
    fn segment(&self, token: &str) -> Analysis {
        Pipeline::segment(self, token)
    }

    fn normalize(&self, token: &str) -> String {
        Pipeline::segment(self, token).surface()
    }
}
