//! Countermodel search: by soundness, a closed proposition whose value on
//! some well-behaved space differs from the whole space has no closed proof.
//! Only exact evaluations count; a truncated universe over-approximates the
//! meet, so a non-full approximate value refutes nothing.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::enumerate::enumerate_spaces;
use crate::eval::{EvalCfg, EvalError, Evaluator, Valuation};
use crate::space::{Open, Space, SpaceError};
use crate::term::{free_context_arity, Context, Sort, Term};
use crate::typing::{self, TypeError};
use crate::value::{TestUniverse, Value};

#[derive(Clone, Debug)]
pub enum SearchError {
    Type(TypeError),
    Eval(EvalError),
    Space(SpaceError),
    NotClosed { arity: usize },
    NotAProposition { actual: String },
    /// The evaluation touched a truncated universe; refutation is unsound.
    NotExact,
}

impl From<TypeError> for SearchError {
    fn from(e: TypeError) -> Self {
        SearchError::Type(e)
    }
}

impl From<EvalError> for SearchError {
    fn from(e: EvalError) -> Self {
        SearchError::Eval(e)
    }
}

impl From<SpaceError> for SearchError {
    fn from(e: SpaceError) -> Self {
        SearchError::Space(e)
    }
}

impl core::fmt::Display for SearchError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SearchError::Type(e) => write!(f, "{}", e),
            SearchError::Eval(e) => write!(f, "{}", e),
            SearchError::Space(e) => write!(f, "{}", e),
            SearchError::NotClosed { arity } => {
                write!(f, "proposition has {} free context slots", arity)
            }
            SearchError::NotAProposition { actual } => {
                write!(f, "term is not a proposition, its type is {}", actual)
            }
            SearchError::NotExact => write!(
                f,
                "evaluation is approximate (quantifies over a truncated universe); \
                 refutation claims need exact values"
            ),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Refuted {
        /// Position in the deterministic enumeration.
        ordinal: usize,
        space: Space,
        /// A point outside the proposition's value.
        witness: usize,
        value: Open,
    },
    NotRefutedUpTo(usize),
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub verdict: Verdict,
    /// Always true for results produced here; kept explicit in reports.
    pub exact_only: bool,
}

fn require_closed_proposition(cfg: &EvalCfg, prop: &Term) -> Result<(), SearchError> {
    let arity = free_context_arity(prop);
    if arity != 0 {
        return Err(SearchError::NotClosed { arity });
    }
    let lim = crate::typing::Limits {
        fuel: cfg.fuel,
        max_level: cfg.max_level,
    };
    let mut ctx = Context::empty();
    let ty = typing::infer(&lim, &mut ctx, prop)?;
    if ty != Term::Sort(Sort::Prop) {
        return Err(SearchError::NotAProposition {
            actual: format!("{:?}", ty),
        });
    }
    Ok(())
}

/// Evaluates a closed proposition on one space, insisting on exactness.
pub fn eval_on_space(cfg: &EvalCfg, prop: &Term, space: &Space) -> Result<Open, SearchError> {
    let universe = TestUniverse::default_for(space, cfg.max_level);
    let ev = Evaluator::new(space, &universe, *cfg);
    let r = ev.eval(&Context::empty(), prop, &Valuation::empty())?;
    if !r.exact {
        return Err(SearchError::NotExact);
    }
    match r.value {
        Value::Open(o) => Ok(o),
        other => Err(SearchError::NotAProposition {
            actual: other.dump(space),
        }),
    }
}

/// Searches the enumerated well-behaved spaces for the first countermodel.
pub fn refute(cfg: &EvalCfg, prop: &Term, max_points: usize) -> Result<SearchResult, SearchError> {
    require_closed_proposition(cfg, prop)?;
    for (ordinal, space) in enumerate_spaces(max_points, true)?.into_iter().enumerate() {
        let value = eval_on_space(cfg, prop, &space)?;
        if value != space.whole() {
            let witness = (0..space.n_points())
                .find(|&p| !space.contains(value, p))
                .expect("a proper open misses some point");
            return Ok(SearchResult {
                verdict: Verdict::Refuted {
                    ordinal,
                    space,
                    witness,
                    value,
                },
                exact_only: true,
            });
        }
    }
    Ok(SearchResult {
        verdict: Verdict::NotRefutedUpTo(max_points),
        exact_only: true,
    })
}

#[derive(Clone, Debug)]
pub struct ValidationRow {
    pub ordinal: usize,
    pub space: Space,
    pub value: Open,
    pub is_whole: bool,
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub rows: Vec<ValidationRow>,
}

impl ValidationReport {
    pub fn all_valid(&self) -> bool {
        self.rows.iter().all(|r| r.is_whole)
    }
}

/// Evaluates the proposition on every enumerated well-behaved space.
pub fn validate(
    cfg: &EvalCfg,
    prop: &Term,
    max_points: usize,
) -> Result<ValidationReport, SearchError> {
    require_closed_proposition(cfg, prop)?;
    let mut rows = Vec::new();
    for (ordinal, space) in enumerate_spaces(max_points, true)?.into_iter().enumerate() {
        let value = eval_on_space(cfg, prop, &space)?;
        let is_whole = value == space.whole();
        rows.push(ValidationRow {
            ordinal,
            space,
            value,
            is_whole,
        });
    }
    Ok(ValidationReport { rows })
}

/// The full `y^x` matrix over the opens in canonical order; entry `[y][x]`
/// is the canonical index of `exp(open y, open x)`.
pub fn exponent_table(space: &Space) -> Result<Vec<Vec<usize>>, SpaceError> {
    let opens: Vec<Open> = space.opens().iter().map(|&m| Open(m)).collect();
    let mut rows = Vec::with_capacity(opens.len());
    for &y in &opens {
        let mut row = Vec::with_capacity(opens.len());
        for &x in &opens {
            let e = space.exp(y, x)?;
            row.push(space.open_index(e).expect("exponential of opens is open"));
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Canonical display labels for a space's opens: empty set, X, and point-set
/// listings in between.
pub fn open_label(space: &Space, index: usize) -> String {
    let Some(o) = space.open_by_index(index) else {
        return "?".to_string();
    };
    if o == space.empty() {
        return "0".to_string();
    }
    if o == space.whole() {
        return "X".to_string();
    }
    let pts: Vec<&str> = space.points_of(o).map(|p| space.point_name(p)).collect();
    format!("{{{}}}", pts.join(","))
}
