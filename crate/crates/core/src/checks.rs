//! Executable forms of the soundness statements: judgment soundness over all
//! valuations, equality of interpretations across beta-prime equality, the
//! logical-symbol characterizations, and the two proof-irrelevance
//! properties.
//!
//! Membership in a type is checked type-directed, so dependent-function
//! spaces never get materialized just to test one element. Finite test
//! universes cannot be closed under the list closure; domain elements missing
//! purely because of depth truncation are counted as skips, not violations.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::eval::{EvalError, Evaluator, Plan, Valuation};
use crate::lists;
use crate::parse::{parse_closed, parse_term};
use crate::reduce;
use crate::space::Space;
use crate::term::{self, Context, ListConst, Sort, Term};
use crate::typing::{self, ProdClass};
use crate::value::{self, TestUniverse, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Membership {
    Yes,
    No(String),
    /// Unanswerable at this truncation depth.
    Truncated,
}

/// A typing-annotated type, ready for repeated membership checks.
enum MemberPlan {
    PropSort,
    TypeSort(u32),
    /// A Pi landing in Prop: evaluate it to an open and test point
    /// containment.
    PiProof(Plan),
    /// A Pi landing in Type: check graphs fiber-wise.
    PiFun {
        dom: Plan,
        dom_is_prop: bool,
        cod: Box<MemberPlan>,
        constant: bool,
    },
    /// `list A`: structural containment in the truncated closure.
    ListOf(Plan),
    /// Anything else: evaluate the type and inspect the carrier.
    Evaluated(Plan),
}

#[derive(Clone, Debug)]
pub struct SoundnessReport {
    pub valuations: usize,
    pub violations: Vec<String>,
    pub truncation_skips: usize,
    pub exact: bool,
}

impl SoundnessReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl<'a> Evaluator<'a> {
    fn member_plan(&self, ctx: &mut Context, ty: &Term) -> Result<MemberPlan, EvalError> {
        let lim = self.limits();
        let mut fuel = self.cfg.fuel;
        let ty = reduce::whnf(ty, &mut fuel).map_err(|_| {
            EvalError::Type(typing::TypeError {
                rule: "fuel",
                expected: String::new(),
                actual: String::new(),
                location: "membership".to_string(),
            })
        })?;
        Ok(match &ty {
            Term::Sort(Sort::Prop) => MemberPlan::PropSort,
            Term::Sort(Sort::Type(i)) => MemberPlan::TypeSort(*i),
            Term::Pi(a, b, hint) => {
                let class = typing::prod_class(&lim, ctx, a, b)?;
                match class {
                    ProdClass::PP | ProdClass::TP => MemberPlan::PiProof(self.plan_in(ctx, &ty)?),
                    ProdClass::PT | ProdClass::TT => {
                        let dom = self.plan_in(ctx, a)?;
                        ctx.push(hint.as_str().unwrap_or(""), (**a).clone());
                        let cod = self.member_plan(ctx, b);
                        ctx.pop();
                        MemberPlan::PiFun {
                            dom,
                            dom_is_prop: matches!(class, ProdClass::PT),
                            cod: Box::new(cod?),
                            constant: matches!(class, ProdClass::PT),
                        }
                    }
                }
            }
            _ => {
                let (head, args) = ty.spine();
                if matches!(head, Term::Const(ListConst::List)) && args.len() == 1 {
                    MemberPlan::ListOf(self.plan_in(ctx, args[0])?)
                } else {
                    MemberPlan::Evaluated(self.plan_in(ctx, &ty)?)
                }
            }
        })
    }

    fn plan_in(&self, ctx: &mut Context, t: &Term) -> Result<Plan, EvalError> {
        self.prepare(&ctx.clone(), t)
    }

    fn run_plan(
        &self,
        plan: &Plan,
        gamma: &Valuation,
        exact: &mut bool,
    ) -> Result<Value, EvalError> {
        let r = self.eval_plan(plan, gamma)?;
        *exact &= r.exact;
        Ok(r.value)
    }

    fn member(
        &self,
        plan: &MemberPlan,
        gamma: &mut Valuation,
        v: &Value,
        report: &mut SoundnessReport,
    ) -> Result<Membership, EvalError> {
        match plan {
            MemberPlan::PropSort => Ok(match v {
                Value::Open(o) if self.space.is_open(o.0) => Membership::Yes,
                _ => Membership::No("a proposition must denote an open".to_string()),
            }),
            MemberPlan::TypeSort(i) => {
                if *v == value::opens_value(self.space) {
                    // the space itself is assumed drawn from the lowest universe
                    return Ok(Membership::Yes);
                }
                for j in 0..*i {
                    if *v == self.universe.level_value(j) {
                        return Ok(Membership::Yes);
                    }
                }
                if self.universe.level(*i).contains(v) {
                    return Ok(Membership::Yes);
                }
                if let Value::Set(items) = v {
                    if items.iter().all(value::is_list_value) {
                        // a truncated closure: its untruncated form would be
                        // a universe member, the finite stand-in cannot be
                        report.exact = false;
                        return Ok(Membership::Truncated);
                    }
                }
                Ok(Membership::No(format!(
                    "{} is not a member of the level-{} test universe",
                    v.dump(self.space),
                    i
                )))
            }
            MemberPlan::PiProof(pi_plan) => {
                let mut exact = true;
                let tv = self.run_plan(pi_plan, gamma, &mut exact)?;
                report.exact &= exact;
                let o = tv.as_open().ok_or_else(|| EvalError::NotACarrier {
                    what: tv.dump(self.space),
                })?;
                Ok(match v {
                    Value::Point(p) if self.space.contains(o, *p) => Membership::Yes,
                    Value::Point(p) => Membership::No(format!(
                        "point {} outside open {:?}",
                        self.space.point_name(*p),
                        self.space.open_index(o)
                    )),
                    _ => Membership::No("a proof must denote a point".to_string()),
                })
            }
            MemberPlan::PiFun {
                dom,
                dom_is_prop,
                cod,
                constant,
            } => {
                let graph = match v.as_graph() {
                    Some(g) => g.clone(),
                    None => {
                        return Ok(Membership::No(
                            "a function must denote a graph".to_string(),
                        ))
                    }
                };
                let mut exact = true;
                let av = self.run_plan(dom, gamma, &mut exact)?;
                report.exact &= exact;
                let elems = self.elements(&av)?;
                let mut truncated = false;
                for alpha in &elems {
                    if !graph.contains_key(alpha) {
                        if value::is_list_value(alpha) {
                            truncated = true;
                            report.exact = false;
                            continue;
                        }
                        return Ok(Membership::No(format!(
                            "domain element {} missing from the graph",
                            alpha.dump(self.space)
                        )));
                    }
                }
                if graph.keys().any(|k| !elems.contains(k)) {
                    return Ok(Membership::No(
                        "graph has keys outside the domain".to_string(),
                    ));
                }
                if *constant {
                    let mut values = graph.values();
                    if let Some(first) = values.next() {
                        if values.any(|w| w != first) {
                            return Ok(Membership::No(
                                "function over a proposition is not constant".to_string(),
                            ));
                        }
                    }
                }
                for alpha in &elems {
                    let Some(img) = graph.get(alpha) else { continue };
                    gamma.push(alpha.clone(), *dom_is_prop);
                    let m = self.member(cod, gamma, img, report);
                    gamma.pop();
                    match m? {
                        Membership::Yes => {}
                        Membership::Truncated => truncated = true,
                        Membership::No(why) => {
                            return Ok(Membership::No(format!(
                                "image at {}: {}",
                                alpha.dump(self.space),
                                why
                            )));
                        }
                    }
                }
                Ok(if truncated {
                    Membership::Truncated
                } else {
                    Membership::Yes
                })
            }
            MemberPlan::ListOf(carrier) => {
                let mut exact = true;
                let av = self.run_plan(carrier, gamma, &mut exact)?;
                report.exact &= exact;
                let set = match &av {
                    Value::Set(s) => s.clone(),
                    _ => return Ok(Membership::No("list carrier is not a set".to_string())),
                };
                let closure = lists::kleene(&set, self.cfg.list_depth, self.cfg.carrier_cap)?;
                report.exact = false;
                Ok(if closure.contains(v) {
                    Membership::Yes
                } else if value::is_list_value(v) {
                    Membership::Truncated
                } else {
                    Membership::No("not a list over the carrier".to_string())
                })
            }
            MemberPlan::Evaluated(ty_plan) => {
                let mut exact = true;
                let tv = self.run_plan(ty_plan, gamma, &mut exact)?;
                report.exact &= exact;
                match &tv {
                    Value::Open(o) => Ok(match v {
                        Value::Point(p) if self.space.contains(*o, *p) => Membership::Yes,
                        _ => Membership::No(format!(
                            "point not inside open {:?}",
                            self.space.open_index(*o)
                        )),
                    }),
                    Value::Set(items) => Ok(if items.contains(v) {
                        Membership::Yes
                    } else {
                        Membership::No(format!(
                            "{} not a member of {}",
                            v.dump(self.space),
                            tv.dump(self.space)
                        ))
                    }),
                    other => Ok(Membership::No(format!(
                        "type evaluates to a non-carrier {}",
                        other.dump(self.space)
                    ))),
                }
            }
        }
    }

    /// Verifies the soundness statement for one judgment: the value of `t`
    /// belongs to the value of its type at every valuation of `ctx`.
    pub fn check_soundness(&self, ctx: &Context, t: &Term) -> Result<SoundnessReport, EvalError> {
        let lim = self.limits();
        typing::wf_context(&lim, ctx)?;
        let mut cw = ctx.clone();
        let ty = typing::infer(&lim, &mut cw, t)?;
        let term_plan = self.prepare(ctx, t)?;
        let mut cw = ctx.clone();
        let ty_plan = self.member_plan(&mut cw, &ty)?;
        let (vals, ctx_exact) = self.eval_context(ctx)?;
        let mut report = SoundnessReport {
            valuations: vals.len(),
            violations: Vec::new(),
            truncation_skips: 0,
            exact: ctx_exact,
        };
        for gamma in &vals {
            let r = self.eval_plan(&term_plan, gamma)?;
            report.exact &= r.exact;
            let mut gw = gamma.clone();
            match self.member(&ty_plan, &mut gw, &r.value, &mut report)? {
                Membership::Yes => {}
                Membership::Truncated => report.truncation_skips += 1,
                Membership::No(why) => report.violations.push(format!(
                    "value {} not in type at valuation of size {}: {}",
                    r.value.dump(self.space),
                    gamma.len(),
                    why
                )),
            }
        }
        Ok(report)
    }
}

#[derive(Clone, Debug)]
pub struct BetaReport {
    pub valuations: usize,
    pub mismatches: Vec<String>,
    pub exact: bool,
}

impl BetaReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Interpretation equality across beta-prime-equal terms, at every valuation.
pub fn check_beta_soundness(
    ev: &Evaluator<'_>,
    ctx: &Context,
    t1: &Term,
    t2: &Term,
) -> Result<BetaReport, EvalError> {
    let lim = ev.limits();
    let equal = reduce::beta_eq(t1, t2, lim.fuel).map_err(|_| {
        EvalError::Type(typing::TypeError {
            rule: "fuel",
            expected: String::new(),
            actual: String::new(),
            location: "beta equality".to_string(),
        })
    })?;
    if !equal {
        return Err(EvalError::Type(typing::TypeError {
            rule: "beta-equality",
            expected: "beta-prime-equal terms".to_string(),
            actual: "terms with distinct normal forms".to_string(),
            location: "check_beta_soundness".to_string(),
        }));
    }
    let p1 = ev.prepare(ctx, t1)?;
    let p2 = ev.prepare(ctx, t2)?;
    let (vals, ctx_exact) = ev.eval_context(ctx)?;
    let mut report = BetaReport {
        valuations: vals.len(),
        mismatches: Vec::new(),
        exact: ctx_exact,
    };
    for gamma in &vals {
        let r1 = ev.eval_plan(&p1, gamma)?;
        let r2 = ev.eval_plan(&p2, gamma)?;
        report.exact &= r1.exact && r2.exact;
        if r1.value != r2.value {
            report.mismatches.push(format!(
                "{} vs {}",
                r1.value.dump(ev.space),
                r2.value.dump(ev.space)
            ));
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Default)]
pub struct LogicReport {
    pub cases: usize,
    pub failures: Vec<String>,
}

impl LogicReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The logical-symbol characterizations, checked against direct lattice
/// computations: bottom, conjunction, disjunction, the two existential
/// cases, the equivalence clause and the encoded-equality clause.
pub fn check_logical_symbols(space: &Space) -> Result<LogicReport, EvalError> {
    let mut rep = LogicReport::default();
    // small carriers keep the function spaces tame for the Type-side clauses
    let zero = Value::set([]);
    let one = Value::set([zero.clone()]);
    let two = Value::set([zero.clone(), one.clone()]);
    let universe = TestUniverse::from_level0([zero, one, two], 3);
    let ev = Evaluator::new(space, &universe, crate::eval::EvalCfg::default());

    // (i) bottom denotes the empty open
    rep.cases += 1;
    let bot = ev.eval(&Context::empty(), &term::falsum(), &Valuation::empty())?;
    if bot.value != Value::Open(space.empty()) {
        rep.failures.push("bottom is not the empty open".to_string());
    }

    // (ii) and (iii): over all pairs of opens as values of P, Q
    let mut pq = Context::empty();
    pq.push("P", parse_closed("Prop").unwrap());
    pq.push("Q", parse_closed("Prop").unwrap());
    let names = vec_names(&["P", "Q"]);
    let conj = ev.prepare(&pq, &parse_term("P /\\ Q", &names).unwrap())?;
    let disj = ev.prepare(&pq, &parse_term("P \\/ Q", &names).unwrap())?;
    let ex_prop = ev.prepare(&pq, &parse_term("exists h : P, Q", &names).unwrap())?;
    let equiv = ev.prepare(&pq, &parse_term("P <-> Q", &names).unwrap())?;
    for &pm in space.opens() {
        for &qm in space.opens() {
            let (p, q) = (crate::space::Open(pm), crate::space::Open(qm));
            let mut gamma = Valuation::empty();
            gamma.push(Value::Open(p), false);
            gamma.push(Value::Open(q), false);

            rep.cases += 1;
            let got = ev.eval_plan(&conj, &gamma)?.value;
            if got != Value::Open(space.meet(p, q)?) {
                rep.failures
                    .push(format!("conjunction mismatch at opens {:?} {:?}", p, q));
            }
            rep.cases += 1;
            let got = ev.eval_plan(&disj, &gamma)?.value;
            if got != Value::Open(space.join(p, q)?) {
                rep.failures
                    .push(format!("disjunction mismatch at opens {:?} {:?}", p, q));
            }
            // (iv) existential over a propositional domain
            rep.cases += 1;
            let got = ev.eval_plan(&ex_prop, &gamma)?.value;
            let expect = if p == space.empty() {
                space.empty()
            } else {
                space.meet(p, q)?
            };
            if got != Value::Open(expect) {
                rep.failures.push(format!(
                    "propositional existential mismatch at opens {:?} {:?}",
                    p, q
                ));
            }
            // (vi) a valid equivalence forces equal interpretations
            rep.cases += 1;
            let got = ev.eval_plan(&equiv, &gamma)?.value;
            if got == Value::Open(space.whole()) && p != q {
                rep.failures.push(format!(
                    "equivalence holds at distinct opens {:?} {:?}",
                    p, q
                ));
            }
        }
    }

    // (v) existential over a set-sorted domain: the join of the fibers
    let mut cf = Context::empty();
    cf.push("C", parse_closed("Type0").unwrap());
    cf.push("f", parse_term("C -> Prop", &vec_names(&["C"])).unwrap());
    let names = vec_names(&["C", "f"]);
    let ex_type = ev.prepare(&cf, &parse_term("exists c : C, f c", &names).unwrap())?;
    let (vals, _) = ev.eval_context(&cf)?;
    for gamma in &vals {
        rep.cases += 1;
        let got = ev.eval_plan(&ex_type, gamma)?.value;
        let graph = gamma.entries[1].as_graph().unwrap();
        let mut expect = space.empty();
        for w in graph.values() {
            expect = space.join(expect, w.as_open().unwrap())?;
        }
        if got != Value::Open(expect) {
            rep.failures
                .push("set-sorted existential is not the fiber join".to_string());
        }
    }

    // (vii) the equality encoding holds exactly at equal interpretations
    let mut axy = Context::empty();
    axy.push("A", parse_closed("Type0").unwrap());
    axy.push("x", parse_term("A", &vec_names(&["A"])).unwrap());
    axy.push("y", parse_term("A", &vec_names(&["A", "x"])).unwrap());
    let names = vec_names(&["A", "x", "y"]);
    let eq = ev.prepare(&axy, &parse_term("x =[A] y", &names).unwrap())?;
    let (vals, _) = ev.eval_context(&axy)?;
    for gamma in &vals {
        rep.cases += 1;
        let got = ev.eval_plan(&eq, gamma)?.value;
        let holds = got == Value::Open(space.whole());
        let equal = gamma.entries[1] == gamma.entries[2];
        if holds != equal {
            rep.failures.push(format!(
                "equality encoding disagrees with value equality ({} vs {})",
                holds, equal
            ));
        }
    }
    Ok(rep)
}

/// The proof-irrelevance formula denotes the whole space.
pub fn check_proof_irrelevance(space: &Space) -> Result<LogicReport, EvalError> {
    let mut rep = LogicReport::default();
    let universe = TestUniverse::default_for(space, 3);
    let ev = Evaluator::new(space, &universe, crate::eval::EvalCfg::default());
    let t = parse_closed("forall P : Prop, forall p1 : P, forall p2 : P, p1 =[P] p2").unwrap();
    rep.cases += 1;
    let r = ev.eval(&Context::empty(), &t, &Valuation::empty())?;
    if !r.exact {
        rep.failures
            .push("proof irrelevance should evaluate exactly".to_string());
    }
    if r.value != Value::Open(space.whole()) {
        rep.failures.push(format!(
            "proof irrelevance denotes {} instead of the whole space",
            r.value.dump(space)
        ));
    }
    Ok(rep)
}

/// Semantic proof irrelevance: a non-proof term's value ignores the entry at
/// the given propositional slot.
pub fn check_semantic_irrelevance(
    ev: &Evaluator<'_>,
    ctx: &Context,
    slot: usize,
    t: &Term,
) -> Result<LogicReport, EvalError> {
    let lim = ev.limits();
    let mut rep = LogicReport::default();
    let mut prefix = Context::empty();
    for (i, (name, ty)) in ctx.iter().enumerate() {
        if i == slot {
            let prop = typing::is_propositional(&lim, &mut prefix, ty)?;
            if !prop {
                return Err(EvalError::NotACarrier {
                    what: format!("entry {} is not propositional", slot),
                });
            }
        }
        prefix.push(name.clone(), ty.clone());
    }
    let mut cw = ctx.clone();
    if typing::is_proof_term(&lim, &mut cw, t)? {
        return Err(EvalError::NotACarrier {
            what: "term under test must not be a proof".to_string(),
        });
    }
    let plan = ev.prepare(ctx, t)?;
    let (vals, _) = ev.eval_context(ctx)?;
    let mut groups: BTreeSet<(Vec<Value>, Value)> = BTreeSet::new();
    for gamma in &vals {
        let key: Vec<Value> = gamma
            .entries
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != slot)
            .map(|(_, v)| v.clone())
            .collect();
        let v = ev.eval_plan(&plan, gamma)?.value;
        rep.cases += 1;
        groups.insert((key, v));
    }
    let keys: BTreeSet<Vec<Value>> = groups.iter().map(|(k, _)| k.clone()).collect();
    if keys.len() != groups.len() {
        rep.failures
            .push("value depends on the proof entry at the protected slot".to_string());
    }
    Ok(rep)
}

fn vec_names(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::EvalCfg;

    fn ev_for<'b>(s: &'b Space, u: &'b TestUniverse) -> Evaluator<'b> {
        Evaluator::new(s, u, EvalCfg::default())
    }

    #[test]
    fn soundness_of_the_polymorphic_identity() {
        for space in [Space::classical(), Space::sierpinski(), Space::diamond()] {
            let u = TestUniverse::default_for(&space, 3);
            let ev = ev_for(&space, &u);
            let t = parse_closed("fun (P : Prop) => fun (p : P) => p").unwrap();
            let r = ev.check_soundness(&Context::empty(), &t).unwrap();
            assert!(r.ok(), "violations: {:?}", r.violations);
            assert!(r.exact);
        }
    }

    #[test]
    fn soundness_of_axioms_and_sorts() {
        let space = Space::sierpinski();
        let u = TestUniverse::default_for(&space, 3);
        let ev = ev_for(&space, &u);
        for src in ["Prop", "Type0", "Type1", "False", "forall P : Prop, P -> P"] {
            let t = parse_closed(src).unwrap();
            let r = ev.check_soundness(&Context::empty(), &t).unwrap();
            assert!(r.ok(), "{}: {:?}", src, r.violations);
        }
    }

    #[test]
    fn soundness_under_a_context_with_proofs() {
        let space = Space::diamond();
        let u = TestUniverse::default_for(&space, 3);
        let ev = ev_for(&space, &u);
        let mut ctx = Context::empty();
        ctx.push("P", parse_closed("Prop").unwrap());
        ctx.push("p", parse_term("P", &vec_names(&["P"])).unwrap());
        let t = parse_term("p", &vec_names(&["P", "p"])).unwrap();
        let r = ev.check_soundness(&ctx, &t).unwrap();
        assert!(r.ok(), "violations: {:?}", r.violations);
        // one valuation per point of each open: 0+1+2+2+3+4
        assert_eq!(r.valuations, 12);
    }

    #[test]
    fn nil_is_sound_with_the_default_universe() {
        let space = Space::sierpinski();
        let u = TestUniverse::default_for(&space, 3);
        let ev = ev_for(&space, &u);
        let r = ev
            .check_soundness(&Context::empty(), &Term::Const(ListConst::Nil))
            .unwrap();
        assert!(r.ok(), "violations: {:?}", r.violations);
        assert!(!r.exact);
    }

    #[test]
    fn list_constant_membership_is_truncation_limited() {
        // the closure of a carrier is not itself a member of the finite
        // universe: recorded as skips, never as violations
        let space = Space::sierpinski();
        let u = TestUniverse::default_for(&space, 3);
        let ev = ev_for(&space, &u);
        let r = ev
            .check_soundness(&Context::empty(), &Term::Const(ListConst::List))
            .unwrap();
        assert!(r.ok(), "violations: {:?}", r.violations);
        assert!(r.truncation_skips > 0);
    }

    #[test]
    fn beta_soundness_of_a_simple_redex() {
        let space = Space::sierpinski();
        let u = TestUniverse::default_for(&space, 3);
        let ev = ev_for(&space, &u);
        let mut ctx = Context::empty();
        ctx.push("P", parse_closed("Prop").unwrap());
        let t1 = parse_term("(fun (Q : Prop) => Q \\/ P) (~P)", &vec_names(&["P"])).unwrap();
        let t2 = parse_term("(~P) \\/ P", &vec_names(&["P"])).unwrap();
        let r = check_beta_soundness(&ev, &ctx, &t1, &t2).unwrap();
        assert!(r.ok(), "mismatches: {:?}", r.mismatches);
        assert_eq!(r.valuations, 3);
    }

    #[test]
    fn beta_soundness_rejects_unequal_terms() {
        let space = Space::sierpinski();
        let u = TestUniverse::default_for(&space, 3);
        let ev = ev_for(&space, &u);
        let t1 = parse_closed("False").unwrap();
        let t2 = parse_closed("False -> False").unwrap();
        assert!(check_beta_soundness(&ev, &Context::empty(), &t1, &t2).is_err());
    }

    #[test]
    fn logical_symbols_on_small_spaces() {
        for space in [Space::classical(), Space::sierpinski(), Space::diamond()] {
            let r = check_logical_symbols(&space).unwrap();
            assert!(r.ok(), "failures: {:?}", r.failures);
            assert!(r.cases > 20);
        }
    }

    #[test]
    fn proof_irrelevance_on_small_spaces() {
        for space in [Space::classical(), Space::sierpinski(), Space::diamond()] {
            let r = check_proof_irrelevance(&space).unwrap();
            assert!(r.ok(), "failures: {:?}", r.failures);
        }
    }

    #[test]
    fn semantic_irrelevance_of_nonproof_terms() {
        let space = Space::diamond();
        let u = TestUniverse::default_for(&space, 3);
        let ev = ev_for(&space, &u);
        let mut ctx = Context::empty();
        ctx.push("P", parse_closed("Prop").unwrap());
        ctx.push("p", parse_term("P", &vec_names(&["P"])).unwrap());
        let t = parse_closed("fun (Q : Prop) => Q").unwrap();
        let r = check_semantic_irrelevance(&ev, &ctx, 1, &t).unwrap();
        assert!(r.ok(), "failures: {:?}", r.failures);
        // a proof term is excluded by precondition
        let p = parse_term("p", &vec_names(&["P", "p"])).unwrap();
        assert!(check_semantic_irrelevance(&ev, &ctx, 1, &p).is_err());
    }
}
