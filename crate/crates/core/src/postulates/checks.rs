use serde::{Deserialize, Serialize};

use super::candidates::{falsum_candidates, redundancy_candidates, shallow_pool, RedundancyMode};
use super::{Ctx, OperatorKind as Op, Outcome, Postulate, Shape, Theorem};
use crate::error::Result;
use crate::logic::{BeliefBase, Formula, Reasoner};
use crate::operators::mum_input;

/// Which side of consistency a strong-Uniformity clause asks for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    /// `X ∪ D` is consistent.
    Consistent,
    /// `X ∪ D ⊢ ⊥`.
    Inconsistent,
}

fn condition_with(
    consistent: &mut dyn FnMut(&BeliefBase) -> bool,
    first: (&BeliefBase, &BeliefBase),
    second: (&BeliefBase, &BeliefBase),
    polarity: Polarity,
    carrier: Option<&BeliefBase>,
) -> bool {
    let want = polarity == Polarity::Consistent;
    let mut side =
        |x: &BeliefBase, (s, d): (&BeliefBase, &BeliefBase)| x.is_subset(s) && consistent(&x.union(d)) == want;
    let mut agree = |x: BeliefBase| side(&x, first) == side(&x, second);
    match carrier {
        // A set outside S1 ∪ S2 fails the subset clause on both sides, so
        // subsets of S1 and of S2 decide the quantifier.
        None => first.0.subsets().chain(second.0.subsets()).all(&mut agree),
        Some(c) => c.subsets().all(&mut agree),
    }
}

/// Antecedent of strong Uniformity for sides `(S1, D1)` and `(S2, D2)`:
/// for every `X`, `X ⊆ S1` with the polarity clause on `X ∪ D1` holds iff
/// the same holds for side two. With `carrier` set, `X` ranges over its
/// subsets instead of the exact finite reduction.
pub fn strong_uniformity_condition(
    reasoner: &Reasoner,
    first: (&BeliefBase, &BeliefBase),
    second: (&BeliefBase, &BeliefBase),
    polarity: Polarity,
    carrier: Option<&BeliefBase>,
) -> Result<bool> {
    let mut bases = vec![first.0, first.1, second.0, second.1];
    bases.extend(carrier);
    let sem = reasoner.semantics(&bases)?;
    let mut consistent = |x: &BeliefBase| sem.consistent(x.iter());
    Ok(condition_with(&mut consistent, first, second, polarity, carrier))
}

#[derive(Clone)]
enum Operand {
    Set(BeliefBase),
    One(Formula),
}

impl Operand {
    fn inputs(&self) -> BeliefBase {
        match self {
            Operand::Set(a) => a.clone(),
            Operand::One(phi) => mum_input(phi),
        }
    }
}

fn run(ctx: &mut Ctx, k: &BeliefBase, x: &Operand) -> Result<BeliefBase> {
    match x {
        Operand::Set(a) => ctx.apply(k, a),
        Operand::One(phi) => ctx.apply_formula(k, phi),
    }
}

fn k(ctx: &Ctx) -> BeliefBase {
    ctx.inst.k.clone()
}

fn a(ctx: &Ctx) -> BeliefBase {
    ctx.inst.a.clone()
}

fn phi(ctx: &Ctx) -> Operand {
    Operand::One(ctx.inst.phi.clone())
}

fn set_a(ctx: &Ctx) -> Operand {
    Operand::Set(a(ctx))
}

/// `lower ∪ S` for every `S ⊆ upper \ lower`; nothing when `lower ⊄ upper`.
fn between(lower: &BeliefBase, upper: &BeliefBase) -> Vec<BeliefBase> {
    if !lower.is_subset(upper) {
        return Vec::new();
    }
    upper.difference(lower).subsets().map(|s| s.union(lower)).collect()
}

fn one(f: &Formula) -> BeliefBase {
    BeliefBase::from_iter([f.clone()])
}

#[derive(Clone, Copy)]
enum Implication {
    Some,
    All,
}

fn implies(ctx: &mut Ctx, how: Implication, set: &BeliefBase, targets: &BeliefBase) -> bool {
    match how {
        Implication::Some => ctx.implies_some(set, targets),
        Implication::All => ctx.implies_all(set, targets),
    }
}

/// Some member of `inputs` is consistent with `set`.
fn fits_some(ctx: &mut Ctx, set: &BeliefBase, inputs: &BeliefBase) -> bool {
    inputs.iter().any(|f| ctx.consistent(&set.with(f.clone())))
}

// Contraction postulates.

fn within_k(ctx: &mut Ctx) -> Result<Outcome> {
    let (k, a) = (k(ctx), a(ctx));
    let r = ctx.apply(&k, &a)?;
    Ok(Outcome::check(r.is_subset(&k), || format!("{r} is not a subset of K")))
}

fn contraction_success(ctx: &mut Ctx, how: Implication) -> Result<Outcome> {
    let (k, a) = (k(ctx), a(ctx));
    if implies(ctx, how, &BeliefBase::new(), &a) {
        return Ok(Outcome::inapplicable("A follows from the empty set"));
    }
    let r = ctx.apply(&k, &a)?;
    let still = implies(ctx, how, &r, &a);
    Ok(Outcome::check(!still, || format!("{r} still implies A")))
}

fn contraction_uniformity(ctx: &mut Ctx, how: Implication) -> Result<Outcome> {
    let (k, a) = (k(ctx), a(ctx));
    let Some(b) = ctx.inst.b.clone() else {
        return Ok(Outcome::inapplicable("no second input"));
    };
    for sub in k.subsets() {
        if implies(ctx, how, &sub, &a) != implies(ctx, how, &sub, &b) {
            return Ok(Outcome::inapplicable(format!("{sub} separates A and B")));
        }
    }
    let ra = ctx.apply(&k, &a)?;
    let rb = ctx.apply(&k, &b)?;
    Ok(Outcome::check(ra == rb, || format!("{ra} differs from {rb}")))
}

fn contraction_relevance(ctx: &mut Ctx, how: Implication) -> Result<Outcome> {
    let (k, a) = (k(ctx), a(ctx));
    let r = ctx.apply(&k, &a)?;
    for f in k.difference(&r).iter() {
        let found = between(&r, &k)
            .into_iter()
            .any(|kp| !implies(ctx, how, &kp, &a) && implies(ctx, how, &kp.with(f.clone()), &a));
        if !found {
            return Ok(Outcome::violated_at(
                f,
                format!("no K' between {r} and K is blocked by {f}"),
            ));
        }
    }
    Ok(Outcome::holds())
}

fn satisfies(ctx: &mut Ctx, mode: RedundancyMode, z: &BeliefBase, a: &BeliefBase) -> bool {
    !z.is_empty()
        && z.iter().all(|f| match mode {
            RedundancyMode::Package => ctx.implies_some(&one(f), a),
            RedundancyMode::Choice => ctx.implies_all(&one(f), a),
            RedundancyMode::Internal => a.iter().all(|psi| !ctx.consistent(&one(f).with(psi.clone()))),
        })
}

fn candidates(ctx: &mut Ctx, mode: RedundancyMode, a: &BeliefBase) -> Result<Vec<BeliefBase>> {
    let pool = shallow_pool(&ctx.atoms());
    let mut out = redundancy_candidates(ctx.reasoner, a, mode, &pool)?;
    if let Some(z) = ctx.inst.z.clone() {
        if !out.contains(&z) && satisfies(ctx, mode, &z, a) {
            out.push(z);
        }
    }
    Ok(out)
}

fn same_after_adding(ctx: &mut Ctx, x: &Operand, zs: &[BeliefBase]) -> Result<Outcome> {
    if zs.is_empty() {
        return Ok(Outcome::inapplicable("no redundant set qualifies"));
    }
    let k = k(ctx);
    let r = run(ctx, &k, x)?;
    for z in zs {
        let rz = run(ctx, &k.union(z), x)?;
        if rz != r {
            return Ok(Outcome::violated(format!("Z = {z}: {r} versus {rz}")));
        }
    }
    Ok(Outcome::Holds(Some(format!("{} candidates", zs.len()))))
}

fn contraction_redundancy(ctx: &mut Ctx, how: Implication, mode: RedundancyMode) -> Result<Outcome> {
    let a = a(ctx);
    if implies(ctx, how, &BeliefBase::new(), &a) {
        return Ok(Outcome::inapplicable("A follows from the empty set"));
    }
    let zs = candidates(ctx, mode, &a)?;
    same_after_adding(ctx, &Operand::Set(a), &zs)
}

fn t1_success(ctx: &mut Ctx) -> Result<Outcome> {
    contraction_success(ctx, Implication::Some)
}
fn t1_uniformity(ctx: &mut Ctx) -> Result<Outcome> {
    contraction_uniformity(ctx, Implication::Some)
}
fn t1_relevance(ctx: &mut Ctx) -> Result<Outcome> {
    contraction_relevance(ctx, Implication::Some)
}
fn t1_redundancy(ctx: &mut Ctx) -> Result<Outcome> {
    contraction_redundancy(ctx, Implication::Some, RedundancyMode::Package)
}
fn t2_success(ctx: &mut Ctx) -> Result<Outcome> {
    contraction_success(ctx, Implication::All)
}
fn t2_uniformity(ctx: &mut Ctx) -> Result<Outcome> {
    contraction_uniformity(ctx, Implication::All)
}
fn t2_relevance(ctx: &mut Ctx) -> Result<Outcome> {
    contraction_relevance(ctx, Implication::All)
}
fn t2_redundancy(ctx: &mut Ctx) -> Result<Outcome> {
    contraction_redundancy(ctx, Implication::All, RedundancyMode::Choice)
}

// Postulates shared by expansion and revision.

fn within_union(ctx: &mut Ctx, x: Operand) -> Result<Outcome> {
    let k = k(ctx);
    let r = run(ctx, &k, &x)?;
    let bound = k.union(&x.inputs());
    Ok(Outcome::check(r.is_subset(&bound), || format!("{r} leaves {bound}")))
}

fn within_union_a(ctx: &mut Ctx) -> Result<Outcome> {
    within_union(ctx, set_a(ctx))
}

fn within_union_phi(ctx: &mut Ctx) -> Result<Outcome> {
    within_union(ctx, phi(ctx))
}

fn keeps_k(ctx: &mut Ctx) -> Result<Outcome> {
    let (k, a) = (k(ctx), a(ctx));
    let r = ctx.apply(&k, &a)?;
    Ok(Outcome::check(k.is_subset(&r), || format!("{r} drops part of K")))
}

fn takes_some_input(ctx: &mut Ctx) -> Result<Outcome> {
    let (k, a) = (k(ctx), a(ctx));
    if a.is_empty() {
        return Ok(Outcome::inapplicable("A is empty"));
    }
    let r = ctx.apply(&k, &a)?;
    Ok(Outcome::check(a.overlaps(&r), || format!("{r} takes nothing from A")))
}

fn takes_phi_or_negation(ctx: &mut Ctx) -> Result<Outcome> {
    let (k, x) = (k(ctx), ctx.inst.phi.clone());
    let r = ctx.apply_formula(&k, &x)?;
    Ok(Outcome::check(mum_input(&x).overlaps(&r), || {
        format!("{r} contains neither {x} nor its negation")
    }))
}

/// `K ∩ A ≠ ∅` and `A ⊆ B ⊆ K ∪ A` give equal results.
fn coincidence(ctx: &mut Ctx) -> Result<Outcome> {
    let (k, a) = (k(ctx), a(ctx));
    let Some(b) = ctx.inst.b.clone() else {
        return Ok(Outcome::inapplicable("no second input"));
    };
    if !k.overlaps(&a) || !a.is_subset(&b) || !b.is_subset(&k.union(&a)) {
        return Ok(Outcome::inapplicable("B is not between A and K ∪ A, or A misses K"));
    }
    let ra = ctx.apply(&k, &a)?;
    let rb = ctx.apply(&k, &b)?;
    Ok(Outcome::check(ra == rb, || format!("{ra} differs from {rb}")))
}

/// `A ∩ K ≠ ∅`, `B ∩ K ≠ ∅` and `K ∪ A = K ∪ B` give equal results.
fn coincidence_symmetric(ctx: &mut Ctx) -> Result<Outcome> {
    let (k, a) = (k(ctx), a(ctx));
    let Some(b) = ctx.inst.b.clone() else {
        return Ok(Outcome::inapplicable("no second input"));
    };
    if !k.overlaps(&a) || !k.overlaps(&b) || k.union(&a) != k.union(&b) {
        return Ok(Outcome::inapplicable("A and B do not cover the same part beyond K"));
    }
    let ra = ctx.apply(&k, &a)?;
    let rb = ctx.apply(&k, &b)?;
    Ok(Outcome::check(ra == rb, || format!("{ra} differs from {rb}")))
}

// Partial expansion.

fn expansion_consistency(ctx: &mut Ctx, require_input: bool) -> Result<Outcome> {
    let (k, a) = (k(ctx), a(ctx));
    let exists = between(&k, &k.union(&a))
        .into_iter()
        .any(|x| (!require_input || x.overlaps(&a)) && ctx.consistent(&x));
    if !exists {
        return Ok(Outcome::inapplicable("no consistent X between K and K ∪ A"));
    }
    let r = ctx.apply(&k, &a)?;
    let ok = ctx.consistent(&r);
    Ok(Outcome::check(ok, || format!("{r} is inconsistent")))
}

fn t3_consistency(ctx: &mut Ctx) -> Result<Outcome> {
    expansion_consistency(ctx, false)
}

fn t3_consistency_within(ctx: &mut Ctx) -> Result<Outcome> {
    expansion_consistency(ctx, true)
}

// Internal revision.

fn t4_iteration(ctx: &mut Ctx) -> Result<Outcome> {
    let (k, a) = (k(ctx), a(ctx));
    let r = ctx.apply(&k, &a)?;
    let again = ctx.apply(&k.intersection(&r), &a)?;
    Ok(Outcome::check(r == again, || format!("{r} differs from {again}")))
}

fn t4_consistency(ctx: &mut Ctx) -> Result<Outcome> {
    let (k, a) = (k(ctx), a(ctx));
    if ctx.equivalent_to_falsum(&a) {
        return Ok(Outcome::inapplicable("A ≡ {⊥}"));
    }
    let r = ctx.apply(&k, &a)?;
    let ok = ctx.consistent(&r);
    Ok(Outcome::check(ok, || format!("{r} is inconsistent")))
}

fn t4_uniformity(ctx: &mut Ctx) -> Result<Outcome> {
    let (k, a) = (k(ctx), a(ctx));
    let Some(b) = ctx.inst.b.clone() else {
        return Ok(Outcome::inapplicable("no second input"));
    };
    for sub in k.subsets() {
        if fits_some(ctx, &sub, &a) != fits_some(ctx, &sub, &b) {
            return Ok(Outcome::inapplicable(format!("{sub} separates A and B")));
        }
    }
    let ra = k.intersection(&ctx.apply(&k, &a)?);
    let rb = k.intersection(&ctx.apply(&k, &b)?);
    Ok(Outcome::check(ra == rb, || format!("kept {ra} versus {rb}")))
}

fn t4_relevance(ctx: &mut Ctx) -> Result<Outcome> {
    let (k, a) = (k(ctx), a(ctx));
    let r = ctx.apply(&k, &a)?;
    let kept = k.intersection(&r);
    for f in k.difference(&r).iter() {
        let found = between(&kept, &k).into_iter().any(|kp| {
            fits_some(ctx, &kp, &a) && a.iter().all(|l| !ctx.consistent(&kp.with(f.clone()).with(l.clone())))
        });
        if !found {
            return Ok(Outcome::violated_at(
                f,
                format!("no K' between {kept} and K is blocked by {f}"),
            ));
        }
    }
    Ok(Outcome::holds())
}

fn t4_redundancy(ctx: &mut Ctx) -> Result<Outcome> {
    let (k, a) = (k(ctx), a(ctx));
    if a.is_empty() || ctx.equivalent_to_falsum(&a) {
        return Ok(Outcome::inapplicable("A is empty or A ≡ {⊥}"));
    }
    let zs: Vec<BeliefBase> = candidates(ctx, RedundancyMode::Internal, &a)?
        .into_iter()
        .filter(|z| ctx.consistent(&k.union(z)))
        .collect();
    same_after_adding(ctx, &Operand::Set(a), &zs)
}

// External revision and external making up one's mind.

fn confirmation(ctx: &mut Ctx, x: Operand) -> Result<Outcome> {
    let k = k(ctx);
    let r = run(ctx, &k, &x)?;
    if !x.inputs().intersection(&r).is_subset(&k) {
        return Ok(Outcome::inapplicable("the result takes new input"));
    }
    Ok(Outcome::check(r == k, || format!("{r} differs from K")))
}

fn confirmation_a(ctx: &mut Ctx) -> Result<Outcome> {
    confirmation(ctx, set_a(ctx))
}

fn confirmation_phi(ctx: &mut Ctx) -> Result<Outcome> {
    confirmation(ctx, phi(ctx))
}

fn new_part_consistency(ctx: &mut Ctx, x: Operand) -> Result<Outcome> {
    let k = k(ctx);
    let r = run(ctx, &k, &x)?;
    let fresh = r.difference(&k);
    if fresh.is_empty() || !ctx.consistent(&fresh) {
        return Ok(Outcome::inapplicable("new part is empty or inconsistent"));
    }
    let ok = ctx.consistent(&r);
    Ok(Outcome::check(ok, || format!("{r} is inconsistent")))
}

fn new_part_consistency_a(ctx: &mut Ctx) -> Result<Outcome> {
    new_part_consistency(ctx, set_a(ctx))
}

fn new_part_consistency_phi(ctx: &mut Ctx) -> Result<Outcome> {
    new_part_consistency(ctx, phi(ctx))
}

/// Second operands the two-operand postulates compare against.
fn partners(ctx: &Ctx, x: &Operand) -> Vec<(BeliefBase, Operand)> {
    let inst = ctx.inst;
    match x {
        Operand::Set(_) => {
            let mut out = vec![(inst.k2.clone(), Operand::Set(inst.b2.clone()))];
            out.extend(inst.b.iter().map(|b| (inst.k.clone(), Operand::Set(b.clone()))));
            out
        }
        Operand::One(_) => vec![
            (inst.k2.clone(), Operand::One(inst.psi.clone())),
            (inst.k.clone(), Operand::One(inst.psi.clone())),
        ],
    }
}

fn uniformity_external(ctx: &mut Ctx, x: Operand) -> Result<Outcome> {
    let k1 = k(ctx);
    let r1 = run(ctx, &k1, &x)?;
    let s = k1.union(&r1);
    let d1 = r1.difference(&k1);
    let mut applicable = false;
    for (k2, y) in partners(ctx, &x) {
        let r2 = run(ctx, &k2, &y)?;
        if k1 == s || k2.union(&r2) != s || k2 == s {
            continue;
        }
        let d2 = r2.difference(&k2);
        let agree = s
            .subsets()
            .all(|kp| ctx.consistent(&kp.union(&d1)) == ctx.consistent(&kp.union(&d2)));
        if !agree {
            continue;
        }
        applicable = true;
        if r1 != r2 {
            return Ok(Outcome::violated(format!("{k1} gives {r1}, {k2} gives {r2}")));
        }
    }
    Ok(if applicable {
        Outcome::holds()
    } else {
        Outcome::inapplicable("no partner meets the antecedent")
    })
}

fn uniformity_a(ctx: &mut Ctx) -> Result<Outcome> {
    uniformity_external(ctx, set_a(ctx))
}

fn uniformity_phi(ctx: &mut Ctx) -> Result<Outcome> {
    uniformity_external(ctx, phi(ctx))
}

/// Relevance over `K ∗ A ⊆ K' ⊆ K ∪ (K ∗ A)` with the given polarity.
fn relevance_external(ctx: &mut Ctx, x: Operand, printed_polarity: bool) -> Result<Outcome> {
    let k = k(ctx);
    let r = run(ctx, &k, &x)?;
    let upper = k.union(&r);
    for f in k.difference(&r).iter() {
        let found = between(&r, &upper).into_iter().any(|kp| {
            let base = ctx.consistent(&kp);
            let extended = ctx.consistent(&kp.with(f.clone()));
            if printed_polarity {
                !base && extended
            } else {
                base && !extended
            }
        });
        if !found {
            return Ok(Outcome::violated_at(
                f,
                format!("no K' between {r} and {upper} is blocked by {f}"),
            ));
        }
    }
    Ok(Outcome::holds())
}

fn relevance_a(ctx: &mut Ctx) -> Result<Outcome> {
    relevance_external(ctx, set_a(ctx), false)
}

fn relevance_phi(ctx: &mut Ctx) -> Result<Outcome> {
    relevance_external(ctx, phi(ctx), false)
}

fn relevance_phi_as_printed(ctx: &mut Ctx) -> Result<Outcome> {
    relevance_external(ctx, phi(ctx), true)
}

fn strong_uniformity(ctx: &mut Ctx, x: Operand, polarity: Polarity) -> Result<Outcome> {
    let k1 = k(ctx);
    let r1 = run(ctx, &k1, &x)?;
    let (s1, d1) = (k1.union(&r1), r1.difference(&k1));
    let mut applicable = false;
    for (k2, y) in partners(ctx, &x) {
        let r2 = run(ctx, &k2, &y)?;
        let (s2, d2) = (k2.union(&r2), r2.difference(&k2));
        let mut consistent = |set: &BeliefBase| ctx.consistent(set);
        if !condition_with(&mut consistent, (&s1, &d1), (&s2, &d2), polarity, None) {
            continue;
        }
        applicable = true;
        if r1 != r2 {
            return Ok(Outcome::violated(format!("{k1} gives {r1}, {k2} gives {r2}")));
        }
    }
    Ok(if applicable {
        Outcome::holds()
    } else {
        Outcome::inapplicable("no partner meets the antecedent")
    })
}

fn strong_uniformity_a(ctx: &mut Ctx) -> Result<Outcome> {
    strong_uniformity(ctx, set_a(ctx), Polarity::Consistent)
}

fn strong_uniformity_phi(ctx: &mut Ctx) -> Result<Outcome> {
    strong_uniformity(ctx, phi(ctx), Polarity::Inconsistent)
}

// Making up one's mind.

fn mum_consistency(ctx: &mut Ctx) -> Result<Outcome> {
    let (k, x) = (k(ctx), ctx.inst.phi.clone());
    let r = ctx.apply_formula(&k, &x)?;
    let ok = ctx.consistent(&r);
    Ok(Outcome::check(ok, || format!("{r} is inconsistent")))
}

fn mum_coincidence(ctx: &mut Ctx, require_consistent: bool) -> Result<Outcome> {
    let k = k(ctx);
    let (x, y) = (ctx.inst.phi.clone(), ctx.inst.psi.clone());
    let (ix, iy) = (mum_input(&x), mum_input(&y));
    if require_consistent && !ctx.consistent(&k) {
        return Ok(Outcome::inapplicable("K is inconsistent"));
    }
    if !ix.overlaps(&k) || !iy.overlaps(&k) || k.union(&ix) != k.union(&iy) {
        return Ok(Outcome::inapplicable("φ and ψ do not coincide over K"));
    }
    let rx = ctx.apply_formula(&k, &x)?;
    let ry = ctx.apply_formula(&k, &y)?;
    Ok(Outcome::check(rx == ry, || format!("{rx} differs from {ry}")))
}

fn t6_coincidence(ctx: &mut Ctx) -> Result<Outcome> {
    mum_coincidence(ctx, true)
}

fn t7_coincidence(ctx: &mut Ctx) -> Result<Outcome> {
    mum_coincidence(ctx, false)
}

fn kept_by_tautology(ctx: &mut Ctx) -> Result<BeliefBase> {
    let k = k(ctx);
    Ok(ctx.apply_formula(&k, &Formula::top())?.intersection(&k))
}

fn t6_iteration(ctx: &mut Ctx) -> Result<Outcome> {
    let (k, x) = (k(ctx), ctx.inst.phi.clone());
    let r = ctx.apply_formula(&k, &x)?;
    let kept = kept_by_tautology(ctx)?;
    let again = ctx.apply_formula(&kept, &x)?;
    Ok(Outcome::check(r == again, || format!("{r} differs from {again}")))
}

fn t6_relevance(ctx: &mut Ctx) -> Result<Outcome> {
    let (k, x) = (k(ctx), ctx.inst.phi.clone());
    let r = ctx.apply_formula(&k, &x)?;
    let kept = kept_by_tautology(ctx)?;
    for f in k.difference(&r).iter() {
        let found = between(&kept, &k)
            .into_iter()
            .any(|kp| ctx.consistent(&kp) && !ctx.consistent(&kp.with(f.clone())));
        if !found {
            return Ok(Outcome::violated_at(
                f,
                format!("no K' between {kept} and K is blocked by {f}"),
            ));
        }
    }
    Ok(Outcome::holds())
}

fn t6_redundancy(ctx: &mut Ctx) -> Result<Outcome> {
    let zs = falsum_candidates(&ctx.atoms());
    same_after_adding(ctx, &phi(ctx), &zs)
}

// Revision consequences.

fn vacuity(ctx: &mut Ctx) -> Result<Outcome> {
    let (k, a) = (k(ctx), a(ctx));
    if !a.is_empty() {
        return Ok(Outcome::inapplicable("A is not empty"));
    }
    let r = ctx.apply(&k, &a)?;
    Ok(Outcome::check(r == k, || format!("{r} differs from K")))
}

fn preservation_if_inconsistent(ctx: &mut Ctx) -> Result<Outcome> {
    let (k, a) = (k(ctx), a(ctx));
    let r = ctx.apply(&k, &a)?;
    if ctx.consistent(&r) {
        return Ok(Outcome::inapplicable("the result is consistent"));
    }
    Ok(Outcome::check(k.is_subset(&r), || {
        format!("inconsistent {r} drops part of K")
    }))
}

// Observations.

fn upper_bound(ctx: &mut Ctx, how: Implication) -> Result<Outcome> {
    let (k, a) = (k(ctx), a(ctx));
    let family = match how {
        Implication::Some => ctx.family("K ⊥ A", |r| r.package_remainders(&k, &a))?,
        Implication::All => ctx.family("K ∠ A", |r| r.choice_remainders(&k, &a))?,
    };
    for sub in k.subsets() {
        if implies(ctx, how, &sub, &a) {
            continue;
        }
        if !family.iter().any(|x| sub.is_subset(x)) {
            return Ok(Outcome::violated(format!("{sub} has no remainder above it")));
        }
    }
    Ok(Outcome::holds())
}

fn obs_upper_bound(ctx: &mut Ctx) -> Result<Outcome> {
    upper_bound(ctx, Implication::Some)
}

fn obs_partial_upper_bound(ctx: &mut Ctx) -> Result<Outcome> {
    upper_bound(ctx, Implication::All)
}

fn obs_partial_sums_vs_remainders(ctx: &mut Ctx) -> Result<Outcome> {
    let (k, a) = (k(ctx), a(ctx));
    let (k2, b2) = (ctx.inst.k2.clone(), ctx.inst.b2.clone());
    let sums = ctx.family("K ⋈ A", |r| r.partial_sums(&k, &a))?;
    if sums.len() < 2 {
        return Ok(Outcome::inapplicable("K ⋈ A has at most one member"));
    }
    let nested = sums.iter().any(|x| sums.iter().any(|y| x != y && x.is_subset(y)));
    if !nested {
        return Ok(Outcome::violated("K ⋈ A has several members and is an antichain"));
    }
    let package = ctx.family("K2 ⊥ B2", |r| r.package_remainders(&k2, &b2))?;
    let choice = ctx.family("K2 ∠ B2", |r| r.choice_remainders(&k2, &b2))?;
    Ok(Outcome::check(package != sums && choice != sums, || {
        "K ⋈ A equals a remainder family".into()
    }))
}

fn obs_partial_sums_unified(ctx: &mut Ctx) -> Result<Outcome> {
    let (k, a) = (k(ctx), a(ctx));
    let mut applicable = false;
    let first = ctx.family("K ⋈ A", |r| r.partial_sums(&k, &a))?;
    let inst = ctx.inst;
    let mut pairs = vec![(inst.k2.clone(), inst.b2.clone())];
    pairs.extend(inst.b.iter().map(|b| (inst.k.union(&inst.a), b.clone())));
    for (i, (k2, b2)) in pairs.into_iter().enumerate() {
        let second = ctx.family(format!("partner {i} ⋈"), |r| r.partial_sums(&k2, &b2))?;
        if first.is_empty() || first != second || k == k2 {
            continue;
        }
        applicable = true;
        if first.len() != 1 {
            return Ok(Outcome::violated(format!(
                "{k} and {k2} share a family of {} members",
                first.len()
            )));
        }
    }
    Ok(if applicable {
        Outcome::holds()
    } else {
        Outcome::inapplicable("no partner with an equal family and a different base")
    })
}

fn internal_stage(ctx: &mut Ctx) -> Result<BeliefBase> {
    let (k, a) = (k(ctx), a(ctx));
    ctx.derived("K ÷c n(A)", |r, s| {
        Ok(s.contraction.meet_select(&k, &r.choice_remainders_vs_negation(&k, &a)?))
    })
}

fn obs_overlap_kept(ctx: &mut Ctx) -> Result<Outcome> {
    let (k, a) = (k(ctx), a(ctx));
    if !ctx.consistent(&k) {
        return Ok(Outcome::inapplicable("K is inconsistent"));
    }
    let stage = internal_stage(ctx)?;
    let shared = k.intersection(&a);
    Ok(Outcome::check(shared.is_subset(&stage), || {
        format!("{shared} is not kept in {stage}")
    }))
}

fn obs_internal_kept(ctx: &mut Ctx) -> Result<Outcome> {
    let (k, a) = (k(ctx), a(ctx));
    if !ctx.consistent(&k) {
        return Ok(Outcome::inapplicable("K is inconsistent"));
    }
    let stage = internal_stage(ctx)?;
    let r = ctx.derived("K ∗c A (internal)", |r, s| {
        Ok(r.internal_choice_revise(&k, &a, s)?.result)
    })?;
    let kept = k.intersection(&r);
    Ok(Outcome::check(kept == stage, || {
        format!("K ∩ {r} = {kept}, stage one {stage}")
    }))
}

fn obs_external_parts(ctx: &mut Ctx) -> Result<Outcome> {
    let (k, a) = (k(ctx), a(ctx));
    let stage = ctx.derived("K ∔ A", |r, s| r.partial_expand(&k, &a, &s.expansion))?;
    let r = ctx.derived("K ∗c A (external)", |r, s| {
        Ok(r.external_choice_revise(&k, &a, s)?.result)
    })?;
    if r.difference(&k) != stage.difference(&k) {
        return Ok(Outcome::violated(format!("new parts differ: {r} versus {stage}")));
    }
    Ok(Outcome::check(r.union(&k) == stage, || {
        format!("{r} ∪ K differs from {stage}")
    }))
}

fn obs_negation_oracle(ctx: &mut Ctx, choice: bool) -> Result<Outcome> {
    let (k, a) = (k(ctx), a(ctx));
    let (shortcut, explicit) = if choice {
        (
            ctx.family("K ∠ n(A) shortcut", |r| r.choice_remainders_vs_negation(&k, &a))?,
            ctx.family("K ∠ n(A) explicit", |r| {
                r.choice_remainders(&k, r.negation_set(&a)?.clauses())
            })?,
        )
    } else {
        (
            ctx.family("K ⊥ n(A) shortcut", |r| r.package_remainders_vs_negation(&k, &a))?,
            ctx.family("K ⊥ n(A) explicit", |r| {
                r.package_remainders(&k, r.negation_set(&a)?.clauses())
            })?,
        )
    };
    Ok(Outcome::check(shortcut == explicit, || {
        "shortcut and explicit families differ".into()
    }))
}

fn obs_choice_oracle(ctx: &mut Ctx) -> Result<Outcome> {
    obs_negation_oracle(ctx, true)
}

fn obs_package_oracle(ctx: &mut Ctx) -> Result<Outcome> {
    obs_negation_oracle(ctx, false)
}

const fn entry(
    theorem: Theorem,
    name: &'static str,
    label: &'static str,
    targets: &'static [Op],
    shape: Shape,
    check: super::CheckFn,
) -> Postulate {
    Postulate {
        theorem,
        name,
        label,
        targets,
        shape,
        known_discrepancy: false,
        check,
    }
}

const fn discrepancy(mut p: Postulate) -> Postulate {
    p.known_discrepancy = true;
    p
}

use Shape::{Formula as F, Sets as S};
use Theorem::*;

const PC: &[Op] = &[Op::PackageContraction];
const CC: &[Op] = &[Op::ChoiceContraction];
const EXP: &[Op] = &[Op::PartialExpansion, Op::ConsistentExpansion];
const CEXP: &[Op] = &[Op::ConsistentExpansion];
const INT: &[Op] = &[Op::InternalRevision];
const EXT: &[Op] = &[Op::ExternalRevision];
const REV: &[Op] = &[Op::InternalRevision, Op::ExternalRevision];
const MI: &[Op] = &[Op::MumInternal];
const ME: &[Op] = &[Op::MumExternal];
const NONE: &[Op] = &[];

pub(crate) static CATALOGUE: &[Postulate] = &[
    entry(T1, "inclusion", "÷p-inclusion", PC, S, within_k),
    entry(T1, "success", "÷p-success", PC, S, t1_success),
    entry(T1, "uniformity", "÷p-uniformity", PC, S, t1_uniformity),
    entry(T1, "relevance", "÷p-relevance", PC, S, t1_relevance),
    entry(T1, "redundancy", "÷p-redundancy", PC, S, t1_redundancy),
    entry(T2, "inclusion", "÷c-inclusion", CC, S, within_k),
    entry(T2, "success", "÷c-success", CC, S, t2_success),
    entry(T2, "uniformity", "÷c-uniformity", CC, S, t2_uniformity),
    entry(T2, "relevance", "÷c-relevance", CC, S, t2_relevance),
    entry(T2, "redundancy", "÷c-redundancy", CC, S, t2_redundancy),
    entry(T3, "inclusion", "∔-inclusion", EXP, S, within_union_a),
    entry(T3, "preservation", "∔-preservation", EXP, S, keeps_k),
    entry(T3, "success", "∔-success", EXP, S, takes_some_input),
    entry(T3, "coincidence", "∔-coincidence", EXP, S, coincidence),
    entry(T3, "consistency", "∔-consistency", CEXP, S, t3_consistency),
    entry(
        T3,
        "consistency-within-partial-sums",
        "∔-consistency (X ∈ K ⋈ A)",
        CEXP,
        S,
        t3_consistency_within,
    ),
    entry(T4, "inclusion", "∗c-inclusion", INT, S, within_union_a),
    entry(T4, "success", "∗c-success", INT, S, takes_some_input),
    entry(T4, "iteration", "∗c-iteration", INT, S, t4_iteration),
    entry(T4, "consistency", "∗c-consistency", INT, S, t4_consistency),
    entry(T4, "coincidence", "∗c-coincidence", INT, S, coincidence),
    entry(T4, "uniformity", "∗c-uniformity", INT, S, t4_uniformity),
    entry(T4, "relevance", "∗c-relevance", INT, S, t4_relevance),
    entry(T4, "redundancy", "∗c-redundancy", INT, S, t4_redundancy),
    entry(T5, "inclusion", "∗c-inclusion", EXT, S, within_union_a),
    entry(T5, "success", "∗c-success", EXT, S, takes_some_input),
    entry(T5, "confirmation", "∗c-confirmation", EXT, S, confirmation_a),
    entry(T5, "consistency", "∗c-Consistency", EXT, S, new_part_consistency_a),
    entry(T5, "coincidence", "∗c-coincidence", EXT, S, coincidence),
    entry(T5, "uniformity", "∗c-Uniformity", EXT, S, uniformity_a),
    entry(T5, "relevance", "∗c-Relevance", EXT, S, relevance_a),
    entry(
        T5,
        "strong-uniformity",
        "∗c-strong Uniformity",
        EXT,
        S,
        strong_uniformity_a,
    ),
    entry(T6, "inclusion", "∗~-inclusion", MI, F, within_union_phi),
    entry(T6, "success", "∗~-success", MI, F, takes_phi_or_negation),
    entry(T6, "consistency", "∗~-consistency", MI, F, mum_consistency),
    entry(T6, "coincidence", "∗~-coincidence", MI, F, t6_coincidence),
    entry(T6, "iteration", "∗~-iteration", MI, F, t6_iteration),
    entry(T6, "relevance", "∗~-relevance", MI, F, t6_relevance),
    entry(T6, "redundancy", "∗~-redundancy", MI, F, t6_redundancy),
    entry(T7, "inclusion", "∗~-inclusion", ME, F, within_union_phi),
    entry(T7, "success", "∗~-success", ME, F, takes_phi_or_negation),
    entry(T7, "confirmation", "∗~-confirmation", ME, F, confirmation_phi),
    entry(T7, "consistency", "∗~-Consistency", ME, F, new_part_consistency_phi),
    entry(T7, "coincidence", "∗~-Coincidence", ME, F, t7_coincidence),
    entry(T7, "uniformity", "∗~-Uniformity", ME, F, uniformity_phi),
    discrepancy(entry(
        T7,
        "relevance-as-printed",
        "∗~-Relevance (as printed)",
        ME,
        F,
        relevance_phi_as_printed,
    )),
    entry(T7, "relevance", "∗~-Relevance", ME, F, relevance_phi),
    entry(
        T7,
        "strong-uniformity",
        "∗~-strong Uniformity",
        ME,
        F,
        strong_uniformity_phi,
    ),
    entry(L1, "plus-coincidence", "∔-Coincidence", EXP, S, coincidence_symmetric),
    entry(L1, "coincidence", "∗c-Coincidence", REV, S, coincidence_symmetric),
    entry(L1, "vacuity", "∗c-vacuity", REV, S, vacuity),
    entry(
        L1,
        "preservation",
        "∗c-preservation",
        REV,
        S,
        preservation_if_inconsistent,
    ),
    entry(Obs, "upper-bound", "upper bound of K ⊥ A", NONE, S, obs_upper_bound),
    entry(
        Obs,
        "partial-upper-bound",
        "upper bound of K ∠ A",
        NONE,
        S,
        obs_partial_upper_bound,
    ),
    entry(
        Obs,
        "partial-sums-vs-remainders",
        "K ⋈ A is no remainder family",
        NONE,
        S,
        obs_partial_sums_vs_remainders,
    ),
    entry(
        Obs,
        "partial-sums-unified",
        "shared K ⋈ A is a singleton",
        NONE,
        S,
        obs_partial_sums_unified,
    ),
    entry(Obs, "overlap-kept", "K ∩ A ⊆ K ÷c n(A)", NONE, S, obs_overlap_kept),
    entry(
        Obs,
        "internal-kept",
        "K ∩ (K ∗c A) = K ÷c n(A)",
        NONE,
        S,
        obs_internal_kept,
    ),
    entry(
        Obs,
        "external-parts",
        "external revision parts",
        NONE,
        S,
        obs_external_parts,
    ),
    entry(
        Obs,
        "choice-negation-oracle",
        "K ∠ n(A) shortcut",
        NONE,
        S,
        obs_choice_oracle,
    ),
    entry(
        Obs,
        "package-negation-oracle",
        "K ⊥ n(A) shortcut",
        NONE,
        S,
        obs_package_oracle,
    ),
];
