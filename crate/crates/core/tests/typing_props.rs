//! Stability properties of the typing layer: inferred types are stable under
//! reduction, weakening by fresh entries, and substitution of well-typed
//! terms; the proof/propositional classification and the product classes are
//! invariant under both transformations.

use alexcc_core::gen::TermGen;
use alexcc_core::parse::{parse_closed, parse_context, parse_term};
use alexcc_core::reduce;
use alexcc_core::term::{self, Context, Term};
use alexcc_core::typing::{self, Limits};

fn lim() -> Limits {
    Limits::default()
}

/// The shared corpus: a context with propositions and proofs, and a mix of
/// generated and fixed terms, all well-typed.
fn corpus() -> (Context, Vec<Term>) {
    let ctx = parse_context(&[("P", "Prop"), ("Q", "Prop"), ("p", "P"), ("q", "Q")]).unwrap();
    let names = ctx.names();
    let mut terms: Vec<Term> = [
        "P",
        "p",
        "P /\\ Q",
        "P \\/ ~Q",
        "(P -> Q) \\/ (Q -> P)",
        "fun (R : Prop) => R -> P",
        "(fun (R : Prop) => R \\/ Q) (P /\\ Q)",
        "fun (h : P) => h",
        "forall R : Prop, (R -> P) -> R -> P",
        "exists h : P, Q",
        "p =[P] p",
        "Prop",
        "Prop -> Prop",
        "fun (A : Type0) => A",
        "nil",
        "fun (A : Type0) => nil A",
    ]
    .iter()
    .map(|s| parse_term(s, &names).unwrap())
    .collect();
    let mut gen = TermGen::new(41);
    for _ in 0..30 {
        let (_, t1, t2) = gen.redex_pair(&lim());
        terms.push(t1);
        terms.push(t2);
    }
    (ctx, terms)
}

/// Inserts a fresh `Prop` entry at slot `k`, shifting later entries and
/// returning the transform for terms stated under the full context.
fn weaken_at(ctx: &Context, k: usize) -> (Context, impl Fn(&Term) -> Term) {
    let n = ctx.len();
    let mut out = Context::empty();
    for (i, (name, ty)) in ctx.iter().enumerate() {
        if i == k {
            out.push("fresh_w", term::prop());
        }
        let ty2 = if i < k {
            ty.clone()
        } else {
            term::shift_above(ty, 1, i - k)
        };
        out.push(name.clone(), ty2);
    }
    if k == n {
        out.push("fresh_w", term::prop());
    }
    let cut = n - k;
    (out, move |t: &Term| term::shift_above(t, 1, cut))
}

/// Substitutes `u` (typed under the prefix before slot `k`) for slot `k`,
/// dropping the entry; returns the transform for full-context terms.
fn subst_at(ctx: &Context, k: usize, u: &Term) -> (Context, impl Fn(&Term) -> Term) {
    let n = ctx.len();
    let mut out = Context::empty();
    for (i, (name, ty)) in ctx.iter().enumerate() {
        if i < k {
            out.push(name.clone(), ty.clone());
        } else if i > k {
            out.push(name.clone(), term::subst(ty, i - 1 - k, u));
        }
    }
    let u = u.clone();
    let idx = n - 1 - k;
    (out, move |t: &Term| term::subst(t, idx, &u))
}

#[test]
fn inferred_types_are_stable_under_reduction() {
    let (ctx, terms) = corpus();
    for t in &terms {
        let mut cw = ctx.clone();
        let ty = typing::infer(&lim(), &mut cw, t).unwrap();
        let mut fuel = reduce::DEFAULT_FUEL;
        let tn = reduce::normalize(t, &mut fuel).unwrap();
        let ty2 = typing::infer(&lim(), &mut cw, &tn).unwrap();
        assert_eq!(ty, ty2, "type changed when reducing {:?}", t);
    }
}

#[test]
fn weakening_shifts_types_and_preserves_classification() {
    let (ctx, terms) = corpus();
    for k in 0..=ctx.len() {
        let (wctx, lift) = weaken_at(&ctx, k);
        typing::wf_context(&lim(), &wctx).unwrap();
        for t in &terms {
            let mut cw = ctx.clone();
            let ty = typing::infer(&lim(), &mut cw, t).unwrap();
            let was_proof = typing::is_proof_term(&lim(), &mut cw, t).unwrap();
            let mut ww = wctx.clone();
            let t2 = lift(t);
            let ty2 = typing::infer(&lim(), &mut ww, &t2).unwrap();
            assert_eq!(ty2, lift(&ty), "weakened type mismatch for {:?}", t);
            assert_eq!(
                typing::is_proof_term(&lim(), &mut ww, &t2).unwrap(),
                was_proof
            );
        }
    }
}

#[test]
fn substitution_preserves_typing_and_proof_classification() {
    let (ctx, terms) = corpus();
    // substitute Q (slot 1) by a proposition typed under (P : Prop)
    for u_src in ["P", "P -> P", "False", "~P"] {
        let u = parse_term(u_src, &["P".to_string()]).unwrap();
        let (sctx, subst) = subst_at(&ctx, 1, &u);
        typing::wf_context(&lim(), &sctx).unwrap();
        for t in &terms {
            let mut cw = ctx.clone();
            let was_proof = typing::is_proof_term(&lim(), &mut cw, t).unwrap();
            let was_prop = typing::is_propositional(&lim(), &mut cw, t).unwrap();
            let mut sw = sctx.clone();
            let t2 = subst(t);
            let now_proof = typing::is_proof_term(&lim(), &mut sw, &t2);
            let now_proof = now_proof.unwrap_or_else(|e| {
                panic!("substituted term {:?} no longer checks: {}", t2, e)
            });
            assert_eq!(now_proof, was_proof, "proof status changed for {:?}", t);
            if was_prop {
                assert!(typing::is_propositional(&lim(), &mut sw, &t2).unwrap());
            }
        }
    }
}

#[test]
fn product_classes_are_stable_under_both_transforms() {
    let ctx = parse_context(&[("P", "Prop"), ("Q", "Prop"), ("p", "P"), ("q", "Q")]).unwrap();
    let names = ctx.names();
    // (A, B) pairs with B stated under ctx extended by (x : A)
    let pairs = [
        ("P", "Q"),             // PP
        ("P", "Prop"),          // PT
        ("Prop", "x \\/ P"),    // TP (domain Prop is Type-sorted)
        ("Prop", "Prop"),       // TT
        ("P /\\ Q", "P"),       // PP again, composite domain
    ];
    let mut results = Vec::new();
    for (a_src, b_src) in pairs {
        let a = parse_term(a_src, &names).unwrap();
        let mut inner = names.clone();
        inner.push("x".to_string());
        let b = parse_term(b_src, &inner).unwrap();
        let mut cw = ctx.clone();
        let class = typing::prod_class(&lim(), &mut cw, &a, &b).unwrap();
        results.push((a.clone(), b.clone(), class));
        // weakening at every slot
        for k in 0..=ctx.len() {
            let (wctx, lift) = weaken_at(&ctx, k);
            let mut ww = wctx.clone();
            let a2 = lift(&a);
            let b2 = term::shift_above(&b, 1, ctx.len() - k + 1);
            assert_eq!(
                typing::prod_class(&lim(), &mut ww, &a2, &b2).unwrap(),
                class,
                "class changed under weakening at {} for {:?}",
                k,
                a
            );
        }
        // substitution of Q
        let u = parse_term("~P", &["P".to_string()]).unwrap();
        let (sctx, subst) = subst_at(&ctx, 1, &u);
        let mut sw = sctx.clone();
        let a2 = subst(&a);
        let b2 = term::subst(&b, ctx.len() - 1, &u);
        assert_eq!(
            typing::prod_class(&lim(), &mut sw, &a2, &b2).unwrap(),
            class,
            "class changed under substitution for {:?}",
            a
        );
    }
    // the corpus covers all four classes
    use typing::ProdClass::*;
    for want in [PP, TP, PT, TT] {
        assert!(results.iter().any(|(_, _, c)| *c == want));
    }
}

#[test]
fn checked_judgments_accept_beta_variants_of_their_types() {
    let mut ctx = Context::empty();
    let t = parse_closed("fun (P : Prop) => fun (p : P) => p").unwrap();
    let ty = parse_closed("forall P : Prop, ((fun (R : Prop) => R) P) -> P").unwrap();
    typing::check(&lim(), &mut ctx, &t, &ty).unwrap();
}
