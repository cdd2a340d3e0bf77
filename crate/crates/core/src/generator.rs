//! Long-ray generators: lazy sources of arbitrarily long crossing prefixes.

use crate::equator::{make_model, EquatorModel};
use crate::error::{Error, Result};
use crate::format::PeriodicSpec;
use crate::order::is_simple_word;
use crate::word::{embed_word, CrossingWord, Hemisphere, Terminal};

pub trait LongRayGenerator: Send + Sync {
    fn name(&self) -> String;

    /// Depth at which the first `n` crossings are expressed.
    fn depth_for(&self, n: usize) -> u32;

    /// Deepest depth any prefix uses.
    fn max_depth(&self) -> u32;

    /// Longest prefix available; `usize::MAX` when unbounded.
    fn horizon(&self) -> usize;

    /// First `n` crossings as a truncated word at depth `depth_for(n)`.
    fn prefix(&self, n: usize) -> Result<CrossingWord>;
}

/// `preamble` followed by `period` repeated forever.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventuallyPeriodic {
    pub model: EquatorModel,
    pub start: Hemisphere,
    pub preamble: Vec<u32>,
    pub period: Vec<u32>,
    pub label: String,
}

impl EventuallyPeriodic {
    pub fn new(model: EquatorModel, start: Hemisphere, preamble: Vec<u32>, period: Vec<u32>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Invalid("period must be non-empty".into()));
        }
        for &g in preamble.iter().chain(&period) {
            model.gap(g)?;
        }
        let g = EventuallyPeriodic {
            model,
            start,
            preamble,
            period,
            label: String::new(),
        };
        // Tight: no repeated gap at any seam of the infinite word.
        let probe = g.word(g.preamble.len() + 2 * g.period.len() + 1);
        if probe.has_bigon() {
            return Err(Error::Invalid("generator word contains a bigon".into()));
        }
        Ok(g)
    }

    pub fn from_spec(model: EquatorModel, spec: &PeriodicSpec) -> Result<Self> {
        Self::new(model, spec.start, spec.preamble.clone(), spec.period.clone())
    }

    pub fn labelled(mut self, label: &str) -> Self {
        self.label = label.to_string();
        self
    }

    fn word(&self, n: usize) -> CrossingWord {
        let gaps = (0..n)
            .map(|i| {
                if i < self.preamble.len() {
                    self.preamble[i]
                } else {
                    self.period[(i - self.preamble.len()) % self.period.len()]
                }
            })
            .collect();
        CrossingWord::new(self.model, self.start, gaps, Terminal::Truncated)
    }

    /// Checks that a prefix covering the preamble and several periods is simple.
    pub fn is_simple_probe(&self) -> bool {
        is_simple_word(&self.word(self.preamble.len() + 6 * self.period.len()))
    }
}

impl LongRayGenerator for EventuallyPeriodic {
    fn name(&self) -> String {
        if self.label.is_empty() {
            crate::format::format_periodic(&PeriodicSpec {
                start: self.start,
                preamble: self.preamble.clone(),
                period: self.period.clone(),
            })
        } else {
            self.label.clone()
        }
    }

    fn depth_for(&self, _n: usize) -> u32 {
        self.model.depth()
    }

    fn max_depth(&self) -> u32 {
        self.model.depth()
    }

    fn horizon(&self) -> usize {
        usize::MAX
    }

    fn prefix(&self, n: usize) -> Result<CrossingWord> {
        Ok(self.word(n))
    }
}

/// A finite committed word used as a long-ray prefix. Asking for more than
/// it holds reports exhaustion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPrefix {
    pub word: CrossingWord,
    pub label: String,
}

impl LongRayGenerator for FixedPrefix {
    fn name(&self) -> String {
        self.label.clone()
    }

    fn depth_for(&self, _n: usize) -> u32 {
        self.word.model.depth()
    }

    fn max_depth(&self) -> u32 {
        self.word.model.depth()
    }

    fn horizon(&self) -> usize {
        self.word.len()
    }

    fn prefix(&self, n: usize) -> Result<CrossingWord> {
        if n > self.word.len() {
            return Err(Error::Exhausted(self.word.len()));
        }
        Ok(self.word.truncated(n))
    }
}

/// Spiral that winds forever around the blocks strictly between gaps `lo`
/// and `hi` (crossing `g_lo`, `g_hi` alternately). It avoids every block
/// outside that range, so it is not ray-filling.
pub fn block_spiral(depth: u32, lo: u32, hi: u32, start: Hemisphere) -> Result<EventuallyPeriodic> {
    let model = make_model(depth)?;
    if lo >= hi || hi > model.last_gap() {
        return Err(Error::Invalid(format!("need lo < hi <= {}", model.last_gap())));
    }
    Ok(EventuallyPeriodic::new(model, start, vec![], vec![lo, hi])?.labelled(&format!("spiral(g{lo},g{hi})@{depth}")))
}

/// Nested family of short rays `α_1, α_2, …` with stage `k` at depth `k + 1`.
/// Each stage begins with the previous one (embedded one level deeper), so
/// the family defines a long ray whose prefixes are read from the shortest
/// stage that covers them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaFamily {
    stages: Vec<CrossingWord>,
}

const ALPHA_FILES: [&str; 4] = [
    include_str!("../data/alpha/alpha_1.curve"),
    include_str!("../data/alpha/alpha_2.curve"),
    include_str!("../data/alpha/alpha_3.curve"),
    include_str!("../data/alpha/alpha_4.curve"),
];

impl AlphaFamily {
    /// The committed stages shipped with the crate.
    pub fn committed() -> AlphaFamily {
        let stages = ALPHA_FILES
            .iter()
            .map(|text| {
                let file = crate::format::parse(text).expect("committed alpha stage parses");
                let word = file.words().next().expect("one word per stage file").clone();
                word
            })
            .collect();
        AlphaFamily::from_stages(stages).expect("committed alpha family is nested")
    }

    /// Checks depths (one level per stage) and nesting.
    pub fn from_stages(stages: Vec<CrossingWord>) -> Result<AlphaFamily> {
        if stages.is_empty() {
            return Err(Error::Invalid("alpha family needs at least one stage".into()));
        }
        for (i, w) in stages.iter().enumerate() {
            if !matches!(w.terminal, Terminal::ShortRay(_)) {
                return Err(Error::Invalid(format!("alpha stage {} is not a short ray", i + 1)));
            }
            if w.has_bigon() || !is_simple_word(w) {
                return Err(Error::Invalid(format!("alpha stage {} is not simple and tight", i + 1)));
            }
            if i > 0 {
                let prev = &stages[i - 1];
                if w.model.depth() != prev.model.depth() + 1 {
                    return Err(Error::Invalid("alpha stages must deepen by one level".into()));
                }
                let up = embed_word(prev, 1)?;
                if w.start != up.start || !w.gaps.starts_with(&up.gaps) {
                    return Err(Error::Invalid(format!(
                        "alpha stage {} does not extend stage {i}",
                        i + 1
                    )));
                }
            }
        }
        Ok(AlphaFamily { stages })
    }

    /// Builds `count` stages from a seed short ray with [`AlphaFamily::extend`].
    pub fn generate(seed: CrossingWord, count: usize) -> Result<AlphaFamily> {
        let mut stages = vec![seed];
        while stages.len() < count {
            let next = Self::extend(stages.last().expect("non-empty"))?;
            stages.push(next);
        }
        Self::from_stages(stages)
    }

    /// One spiral step. The previous stage `w` (ending at block `p`) is
    /// refined; the new stage follows `w`, turns around `p`, runs back along
    /// `w`, turns around `∞`, follows `w` once more and leaves through the
    /// shortest tail that keeps the word simple.
    pub fn extend(prev: &CrossingWord) -> Result<CrossingWord> {
        let w = embed_word(prev, 1)?;
        let m = w.model;
        let p = match w.terminal {
            Terminal::ShortRay(b) => b,
            _ => return Err(Error::Invalid("alpha stages are short rays".into())),
        };
        let mut body = w.gaps.clone();
        body.extend([p + 1, p]);
        body.extend(w.gaps.iter().rev());
        body.extend([0, m.last_gap()]);
        body.extend(&w.gaps);
        let gaps = m.gap_count();
        let tails = std::iter::once(vec![])
            .chain((0..gaps).map(|x| vec![x]))
            .chain((0..gaps).flat_map(|x| (0..gaps).map(move |y| vec![x, y])));
        for tail in tails {
            for q in (0..m.block_count()).rev() {
                let mut g = body.clone();
                g.extend(&tail);
                let c = CrossingWord::new(m, w.start, g, Terminal::ShortRay(q));
                if !c.has_bigon() && is_simple_word(&c) {
                    return Ok(c);
                }
            }
        }
        Err(Error::Invalid("no simple continuation of the alpha stage".into()))
    }

    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    /// Stage `k`, counted from 1.
    pub fn stage(&self, k: usize) -> Result<&CrossingWord> {
        if k == 0 || k > self.stages.len() {
            return Err(Error::Invalid(format!(
                "alpha stage {k} not available (have 1..={})",
                self.stages.len()
            )));
        }
        Ok(&self.stages[k - 1])
    }

    /// Number of equator crossings of stage `k`.
    pub fn long(&self, k: usize) -> Result<usize> {
        Ok(self.stage(k)?.len())
    }

    /// The family with only its first `k` stages.
    pub fn truncated_to(&self, k: usize) -> Result<AlphaFamily> {
        self.stage(k.max(1))?;
        Ok(AlphaFamily {
            stages: self.stages[..k.max(1)].to_vec(),
        })
    }

    fn covering_stage(&self, n: usize) -> &CrossingWord {
        self.stages
            .iter()
            .find(|w| w.len() >= n)
            .unwrap_or_else(|| self.stages.last().expect("non-empty"))
    }
}

impl LongRayGenerator for AlphaFamily {
    fn name(&self) -> String {
        format!("alpha[{}]", self.stages.len())
    }

    fn depth_for(&self, n: usize) -> u32 {
        self.covering_stage(n).model.depth()
    }

    fn max_depth(&self) -> u32 {
        self.stages.last().expect("non-empty").model.depth()
    }

    fn horizon(&self) -> usize {
        self.stages.last().expect("non-empty").len()
    }

    fn prefix(&self, n: usize) -> Result<CrossingWord> {
        if n > self.horizon() {
            return Err(Error::Exhausted(self.horizon()));
        }
        Ok(self.covering_stage(n).truncated(n))
    }
}
