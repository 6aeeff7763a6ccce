//! The interpretation of judgments over a finite well-behaved Alexandroff
//! space and a finite test universe.
//!
//! Proof terms uniformly denote the infimum of the proof-valued entries of
//! the valuation. Propositions denote opens. Products split four ways by
//! their PD class: exponentials and meets on the Prop side, constant-function
//! and dependent-function spaces on the Type side.
//!
//! Evaluation runs in two stages. `prepare` performs the typing work once:
//! proof-term classification, product classes and binder tags depend only on
//! the context, never on the valuation. The resulting plan is then evaluated
//! per valuation without touching the type checker, which keeps exhaustive
//! sweeps over valuations cheap.
//!
//! The genuine universe hierarchy is not finitely enumerable, so evaluating a
//! `Type` sort (and any list carrier, which truncates the Kleene closure)
//! marks the result approximate via `EvalReport::exact`. Exact results are
//! the ones countermodel claims may be built on.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::lists;
use crate::reduce;
use crate::space::{Open, Space, SpaceError};
use crate::term::{Context, ListConst, Sort, Term};
use crate::typing::{self, JudgmentClass, Limits, ProdClass, TypeError};
use crate::value::{self, TestUniverse, Value};

#[derive(Clone, Copy, Debug)]
pub struct EvalCfg {
    pub fuel: u64,
    pub max_level: u32,
    pub carrier_cap: usize,
    pub list_depth: usize,
}

impl Default for EvalCfg {
    fn default() -> Self {
        EvalCfg {
            fuel: reduce::DEFAULT_FUEL,
            max_level: 3,
            carrier_cap: 64,
            list_depth: 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalError {
    Type(TypeError),
    Space(SpaceError),
    /// An application fell outside the function's domain. On type-checked
    /// input this signals a soundness bug, not a user error.
    Undefined { what: String },
    CarrierTooLarge { size: usize, cap: usize },
    /// A list operation needed values past the configured closure depth.
    Truncation { what: String },
    NotACarrier { what: String },
    ProofEntryNotPoint { slot: usize },
    NoBottom,
}

impl From<TypeError> for EvalError {
    fn from(e: TypeError) -> Self {
        EvalError::Type(e)
    }
}

impl From<SpaceError> for EvalError {
    fn from(e: SpaceError) -> Self {
        EvalError::Space(e)
    }
}

impl core::fmt::Display for EvalError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            EvalError::Type(e) => write!(f, "type error: {}", e),
            EvalError::Space(e) => write!(f, "space error: {}", e),
            EvalError::Undefined { what } => write!(f, "undefined application: {}", what),
            EvalError::CarrierTooLarge { size, cap } => {
                write!(f, "carrier of size {} exceeds the cap {}", size, cap)
            }
            EvalError::Truncation { what } => write!(f, "list depth boundary: {}", what),
            EvalError::NotACarrier { what } => write!(f, "not a carrier: {}", what),
            EvalError::ProofEntryNotPoint { slot } => {
                write!(f, "proof-tagged entry {} is not a point", slot)
            }
            EvalError::NoBottom => write!(f, "space has no bottom point"),
        }
    }
}

/// A tuple of semantic values aligned with a context, each entry tagged with
/// whether its variable is a proof variable (its type is propositional).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Valuation {
    pub entries: Vec<Value>,
    pub tags: Vec<bool>,
}

impl Valuation {
    pub fn empty() -> Self {
        Valuation {
            entries: Vec::new(),
            tags: Vec::new(),
        }
    }

    pub fn push(&mut self, v: Value, is_proof: bool) {
        self.entries.push(v);
        self.tags.push(is_proof);
    }

    pub fn pop(&mut self) {
        self.entries.pop();
        self.tags.pop();
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalReport {
    pub value: Value,
    pub exact: bool,
}

/// A typing-annotated term, ready for repeated evaluation. Proof subterms
/// collapse to a single node: their value is the valuation floor no matter
/// what they look like.
#[derive(Clone, Debug)]
pub enum Plan {
    Proof,
    PropSort,
    TypeSort(u32),
    Var(usize),
    Pi {
        class: ProdClass,
        dom: Box<Plan>,
        cod: Box<Plan>,
    },
    Lam {
        dom: Box<Plan>,
        dom_is_prop: bool,
        body: Box<Plan>,
    },
    App {
        fun: Box<Plan>,
        arg: Box<Plan>,
        arg_is_proof: bool,
    },
    /// `list A`
    ListOf(Box<Plan>),
    /// `nil A`
    NilOf,
    /// `cons A h t`
    ConsOf { head: Box<Plan>, tail: Box<Plan> },
    /// `list_rec A F base step scrut extra...`
    RecApp {
        base: Box<Plan>,
        step: Box<Plan>,
        scrut: Box<Plan>,
        extra: Vec<(Plan, bool)>,
    },
    Bare(ListConst),
}

pub struct Evaluator<'a> {
    pub space: &'a Space,
    pub universe: &'a TestUniverse,
    pub cfg: EvalCfg,
}

impl<'a> Evaluator<'a> {
    pub fn new(space: &'a Space, universe: &'a TestUniverse, cfg: EvalCfg) -> Self {
        Evaluator {
            space,
            universe,
            cfg,
        }
    }

    pub fn limits(&self) -> Limits {
        Limits {
            fuel: self.cfg.fuel,
            max_level: self.cfg.max_level,
        }
    }

    /// The floor of a valuation: infimum of its proof-valued entries, the
    /// top point when there are none.
    pub fn floor(&self, g: &Valuation) -> Result<usize, EvalError> {
        let mut pts = Vec::new();
        for (slot, (v, &tag)) in g.entries.iter().zip(g.tags.iter()).enumerate() {
            if tag {
                match v {
                    Value::Point(p) => pts.push(*p),
                    _ => return Err(EvalError::ProofEntryNotPoint { slot }),
                }
            }
        }
        Ok(self.space.inf_points(pts)?)
    }

    /// Elements of a carrier value: members of a set, or the points of an
    /// open (a proposition used as the domain of a binder).
    pub fn elements(&self, v: &Value) -> Result<Vec<Value>, EvalError> {
        match v {
            Value::Set(items) => Ok(items.iter().cloned().collect()),
            Value::Open(o) => Ok(self.space.points_of(*o).map(Value::Point).collect()),
            other => Err(EvalError::NotACarrier {
                what: other.dump(self.space),
            }),
        }
    }

    /// One-time typing pass: classifies every node and fixes binder tags.
    /// The term must be well-typed under `ctx`; failures surface here rather
    /// than during evaluation.
    pub fn prepare(&self, ctx: &Context, t: &Term) -> Result<Plan, EvalError> {
        let mut ctx = ctx.clone();
        self.plan(&mut ctx, t)
    }

    fn plan(&self, ctx: &mut Context, t: &Term) -> Result<Plan, EvalError> {
        let lim = self.limits();
        let (class, _ty) = typing::classify_judgment(&lim, ctx, t)?;
        if class == JudgmentClass::Proof {
            return Ok(Plan::Proof);
        }
        Ok(match t {
            Term::Sort(Sort::Prop) => Plan::PropSort,
            Term::Sort(Sort::Type(i)) => Plan::TypeSort(*i),
            Term::Var(k, _) => {
                let slot = ctx.slot_of_index(*k).ok_or_else(|| EvalError::Undefined {
                    what: format!("variable index {}", k),
                })?;
                Plan::Var(slot)
            }
            Term::Pi(a, b, hint) => {
                let class = typing::prod_class(&lim, ctx, a, b)?;
                let dom = self.plan(ctx, a)?;
                ctx.push(hint.as_str().unwrap_or(""), (**a).clone());
                let cod = self.plan(ctx, b);
                ctx.pop();
                Plan::Pi {
                    class,
                    dom: Box::new(dom),
                    cod: Box::new(cod?),
                }
            }
            Term::Lam(a, body, hint) => {
                let dom_is_prop = typing::is_propositional(&lim, ctx, a)?;
                let dom = self.plan(ctx, a)?;
                ctx.push(hint.as_str().unwrap_or(""), (**a).clone());
                let b = self.plan(ctx, body);
                ctx.pop();
                Plan::Lam {
                    dom: Box::new(dom),
                    dom_is_prop,
                    body: Box::new(b?),
                }
            }
            Term::App(..) => {
                let (head, args) = t.spine();
                match head {
                    Term::Const(ListConst::List) if args.len() == 1 => {
                        Plan::ListOf(Box::new(self.plan(ctx, args[0])?))
                    }
                    Term::Const(ListConst::Nil) if args.len() == 1 => Plan::NilOf,
                    Term::Const(ListConst::Cons) if args.len() == 3 => Plan::ConsOf {
                        head: Box::new(self.plan(ctx, args[1])?),
                        tail: Box::new(self.plan(ctx, args[2])?),
                    },
                    Term::Const(ListConst::ListRec) if args.len() >= 5 => {
                        let base = self.plan(ctx, args[2])?;
                        let step = self.plan(ctx, args[3])?;
                        let scrut = self.plan(ctx, args[4])?;
                        let mut extra = Vec::new();
                        for e in &args[5..] {
                            let is_proof = typing::is_proof_term(&lim, ctx, e)?;
                            extra.push((self.plan(ctx, e)?, is_proof));
                        }
                        Plan::RecApp {
                            base: Box::new(base),
                            step: Box::new(step),
                            scrut: Box::new(scrut),
                            extra,
                        }
                    }
                    _ => match t {
                        Term::App(u, v) => {
                            let arg_is_proof = typing::is_proof_term(&lim, ctx, v)?;
                            Plan::App {
                                fun: Box::new(self.plan(ctx, u)?),
                                arg: Box::new(self.plan(ctx, v)?),
                                arg_is_proof,
                            }
                        }
                        _ => unreachable!(),
                    },
                }
            }
            Term::Const(c) => Plan::Bare(*c),
        })
    }

    /// Evaluates a prepared plan at one valuation.
    pub fn eval_plan(&self, plan: &Plan, g: &Valuation) -> Result<EvalReport, EvalError> {
        let mut g = g.clone();
        let mut exact = true;
        let value = self.run(plan, &mut g, &mut exact)?;
        Ok(EvalReport { value, exact })
    }

    /// Convenience entry: prepare and evaluate in one step.
    pub fn eval(&self, ctx: &Context, t: &Term, g: &Valuation) -> Result<EvalReport, EvalError> {
        let plan = self.prepare(ctx, t)?;
        self.eval_plan(&plan, g)
    }

    fn run(&self, plan: &Plan, g: &mut Valuation, exact: &mut bool) -> Result<Value, EvalError> {
        match plan {
            Plan::Proof => Ok(Value::Point(self.floor(g)?)),
            Plan::PropSort => Ok(value::opens_value(self.space)),
            Plan::TypeSort(i) => {
                *exact = false;
                Ok(self.universe.level_value(*i))
            }
            Plan::Var(slot) => Ok(g.entries[*slot].clone()),
            Plan::Pi { class, dom, cod } => self.run_pi(*class, dom, cod, g, exact),
            Plan::Lam {
                dom,
                dom_is_prop,
                body,
            } => {
                let av = self.run(dom, g, exact)?;
                let elems = self.elements(&av)?;
                let mut pairs = Vec::new();
                for alpha in elems {
                    g.push(alpha.clone(), *dom_is_prop);
                    let bv = self.run(body, g, exact);
                    g.pop();
                    pairs.push((alpha, bv?));
                }
                Ok(Value::graph(pairs))
            }
            Plan::App {
                fun,
                arg,
                arg_is_proof,
            } => {
                let fv = self.run(fun, g, exact)?;
                let av = self.run(arg, g, exact)?;
                self.app_op(*arg_is_proof, &fv, &av)
            }
            Plan::ListOf(carrier) => {
                let cv = self.run(carrier, g, exact)?;
                let set = self.require_set(&cv)?;
                *exact = false;
                Ok(Value::Set(lists::kleene(
                    &set,
                    self.cfg.list_depth,
                    self.cfg.carrier_cap,
                )?))
            }
            Plan::NilOf => Ok(value::nil_value()),
            Plan::ConsOf { head, tail } => {
                let hv = self.run(head, g, exact)?;
                let tv = self.run(tail, g, exact)?;
                let depth = value::list_depth(&tv).ok_or_else(|| EvalError::NotACarrier {
                    what: tv.dump(self.space),
                })?;
                if depth + 1 > self.cfg.list_depth {
                    return Err(EvalError::Truncation {
                        what: format!("cons past depth {}", self.cfg.list_depth),
                    });
                }
                Ok(value::cons_value(hv, tv))
            }
            Plan::RecApp {
                base,
                step,
                scrut,
                extra,
            } => {
                let bv = self.run(base, g, exact)?;
                let sv = self.run(step, g, exact)?;
                let lv = self.run(scrut, g, exact)?;
                let mut acc = self.rec_walk(&sv, &bv, &lv)?;
                for (p, is_proof) in extra {
                    let av = self.run(p, g, exact)?;
                    acc = self.app_op(*is_proof, &acc, &av)?;
                }
                Ok(acc)
            }
            Plan::Bare(c) => match c {
                // list_ind is a proof constant; unreachable in practice since
                // the proof clause catches it first
                ListConst::ListInd => Ok(Value::Point(self.floor(g)?)),
                _ => {
                    *exact = false;
                    lists::constant_value(
                        *c,
                        self.universe.level(0),
                        self.cfg.list_depth,
                        self.cfg.carrier_cap,
                    )
                }
            },
        }
    }

    fn run_pi(
        &self,
        class: ProdClass,
        dom: &Plan,
        cod: &Plan,
        g: &mut Valuation,
        exact: &mut bool,
    ) -> Result<Value, EvalError> {
        let av = self.run(dom, g, exact)?;
        match class {
            ProdClass::PP => {
                let ao = self.require_open(av)?;
                let mut family = Vec::new();
                for p in self.space.points_of(ao).collect::<Vec<_>>() {
                    g.push(Value::Point(p), true);
                    let bv = self.run(cod, g, exact);
                    g.pop();
                    family.push(self.require_open(bv?)?);
                }
                let meet = self.space.big_meet(family)?;
                Ok(Value::Open(self.space.exp(meet, ao)?))
            }
            ProdClass::TP => {
                let elems = self.elements(&av)?;
                let mut family = Vec::new();
                for alpha in elems {
                    g.push(alpha, false);
                    let bv = self.run(cod, g, exact);
                    g.pop();
                    family.push(self.require_open(bv?)?);
                }
                Ok(Value::Open(self.space.big_meet(family)?))
            }
            ProdClass::PT => {
                let ao = self.require_open(av)?;
                let pts: Vec<usize> = self.space.points_of(ao).collect();
                if pts.is_empty() {
                    return Ok(Value::set([Value::graph([])]));
                }
                let mut candidates: Option<Vec<Value>> = None;
                for &p in &pts {
                    g.push(Value::Point(p), true);
                    let bv = self.run(cod, g, exact);
                    g.pop();
                    let elems = self.elements(&bv?)?;
                    candidates = Some(match candidates {
                        None => elems,
                        Some(prev) => prev.into_iter().filter(|w| elems.contains(w)).collect(),
                    });
                }
                let graphs = candidates.unwrap_or_default().into_iter().map(|w| {
                    Value::graph(pts.iter().map(|&p| (Value::Point(p), w.clone())))
                });
                Ok(Value::set(graphs))
            }
            ProdClass::TT => {
                let elems = self.elements(&av)?;
                let mut families: Vec<(Value, Vec<Value>)> = Vec::new();
                let mut size: usize = 1;
                for alpha in elems {
                    g.push(alpha.clone(), false);
                    let bv = self.run(cod, g, exact);
                    g.pop();
                    let fam = self.elements(&bv?)?;
                    size = size.saturating_mul(fam.len());
                    if size > self.cfg.carrier_cap {
                        return Err(EvalError::CarrierTooLarge {
                            size,
                            cap: self.cfg.carrier_cap,
                        });
                    }
                    families.push((alpha, fam));
                }
                let mut graphs: Vec<Vec<(Value, Value)>> = alloc::vec![Vec::new()];
                for (alpha, fam) in families {
                    let mut next = Vec::new();
                    for partial in &graphs {
                        for w in &fam {
                            let mut ext = partial.clone();
                            ext.push((alpha.clone(), w.clone()));
                            next.push(ext);
                        }
                    }
                    graphs = next;
                }
                Ok(Value::set(graphs.into_iter().map(Value::graph)))
            }
        }
    }

    /// Computes the recursor semantically: `rec(nil) = base`,
    /// `rec(cons a l) = step(a)(l)(rec(l))`.
    fn rec_walk(&self, step: &Value, base: &Value, l: &Value) -> Result<Value, EvalError> {
        match value::uncons(l) {
            None => {
                if value::list_depth(l) == Some(0) {
                    Ok(base.clone())
                } else {
                    Err(EvalError::NotACarrier {
                        what: l.dump(self.space),
                    })
                }
            }
            Some((hd, tl)) => {
                let rec_tl = self.rec_walk(step, base, tl)?;
                let s1 = self.lookup(step, hd)?;
                let s2 = self.lookup(&s1, tl)?;
                self.lookup(&s2, &rec_tl)
            }
        }
    }

    fn lookup(&self, f: &Value, a: &Value) -> Result<Value, EvalError> {
        f.as_graph()
            .and_then(|m| m.get(a))
            .cloned()
            .ok_or_else(|| EvalError::Undefined {
                what: format!("{} at {}", f.dump(self.space), a.dump(self.space)),
            })
    }

    /// The application operation: proof arguments are applied at the bottom
    /// point, with the domain required to contain both the argument and the
    /// bottom point.
    pub fn app_op(&self, is_arg_proof: bool, f: &Value, a: &Value) -> Result<Value, EvalError> {
        let graph = f.as_graph().ok_or_else(|| EvalError::Undefined {
            what: format!("{} is not a function", f.dump(self.space)),
        })?;
        if is_arg_proof {
            let bot = self.space.bottom().ok_or(EvalError::NoBottom)?;
            let bot = Value::Point(bot);
            if !graph.contains_key(a) || !graph.contains_key(&bot) {
                return Err(EvalError::Undefined {
                    what: format!(
                        "domain must contain {} and the bottom point",
                        a.dump(self.space)
                    ),
                });
            }
            Ok(graph.get(&bot).unwrap().clone())
        } else {
            graph.get(a).cloned().ok_or_else(|| EvalError::Undefined {
                what: format!("{} outside domain", a.dump(self.space)),
            })
        }
    }

    fn require_open(&self, v: Value) -> Result<Open, EvalError> {
        v.as_open().ok_or_else(|| EvalError::NotACarrier {
            what: format!("expected an open, got {}", v.dump(self.space)),
        })
    }

    fn require_set(
        &self,
        v: &Value,
    ) -> Result<alloc::collections::BTreeSet<Value>, EvalError> {
        match v {
            Value::Set(s) => Ok(s.clone()),
            Value::Open(o) => Ok(self.space.points_of(*o).map(Value::Point).collect()),
            other => Err(EvalError::NotACarrier {
                what: other.dump(self.space),
            }),
        }
    }

    /// All valuations of a context, with proof tags attached, together with
    /// the exactness of the carrier evaluations.
    pub fn eval_context(&self, ctx: &Context) -> Result<(Vec<Valuation>, bool), EvalError> {
        let lim = self.limits();
        let mut exact = true;
        let mut vals = alloc::vec![Valuation::empty()];
        let mut prefix = Context::empty();
        for (name, ty) in ctx.iter() {
            let tag = typing::is_propositional(&lim, &mut prefix, ty)?;
            let plan = {
                let mut cw = prefix.clone();
                self.plan(&mut cw, ty)?
            };
            let mut next = Vec::new();
            for gamma in &vals {
                let mut gw = gamma.clone();
                let carrier = self.run(&plan, &mut gw, &mut exact)?;
                for alpha in self.elements(&carrier)? {
                    let mut ext = gamma.clone();
                    ext.push(alpha, tag);
                    next.push(ext);
                }
            }
            if next.len() > 1_000_000 {
                return Err(EvalError::CarrierTooLarge {
                    size: next.len(),
                    cap: 1_000_000,
                });
            }
            vals = next;
            prefix.push(name.clone(), ty.clone());
        }
        Ok((vals, exact))
    }
}
