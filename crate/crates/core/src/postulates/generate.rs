use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::logic::{BeliefBase, Formula};
use crate::selection::{PriorityOrder, Strategy, StrategyKind};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub num: usize,
    pub seed: u64,
    pub max_base: usize,
    pub max_input: usize,
    pub atoms: usize,
    pub pool_depth: usize,
    pub strategy: StrategyKind,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            num: 500,
            seed: 0,
            max_base: 5,
            max_input: 3,
            atoms: 3,
            pool_depth: 2,
            strategy: StrategyKind::Full,
        }
    }
}

/// One generated test case.
///
/// `k` and `a` are the primary operands. `b` is a second input for the
/// single-base two-input postulates, `z` an extra redundancy candidate, and
/// `k2`/`b2` a second base and input for the two-operand postulates. `phi`
/// and `psi` feed the operators that take a single formula.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub index: usize,
    pub seed: u64,
    pub k: BeliefBase,
    pub a: BeliefBase,
    pub b: Option<BeliefBase>,
    pub z: Option<BeliefBase>,
    pub k2: BeliefBase,
    pub b2: BeliefBase,
    pub phi: Formula,
    pub psi: Formula,
    pub strategy: Strategy,
}

impl Instance {
    /// An instance with only `k` and `a` set; the other operands are copies.
    pub fn simple(k: BeliefBase, a: BeliefBase, strategy: Strategy) -> Self {
        Instance {
            index: 0,
            seed: 0,
            b: None,
            z: None,
            k2: k.clone(),
            b2: a.clone(),
            k,
            a,
            phi: Formula::top(),
            psi: Formula::top(),
            strategy,
        }
    }

    /// Every base mentioned by the instance.
    pub fn bases(&self) -> Vec<&BeliefBase> {
        let mut all = vec![&self.k, &self.a, &self.k2, &self.b2];
        all.extend(self.b.iter());
        all.extend(self.z.iter());
        all
    }
}

/// Atom names `p, q, r, s, t, u, v, w`, then `p8, p9, ...`.
pub fn atom_names(count: usize) -> Vec<String> {
    const NAMES: [&str; 8] = ["p", "q", "r", "s", "t", "u", "v", "w"];
    (0..count)
        .map(|i| NAMES.get(i).map_or_else(|| format!("p{i}"), |n| n.to_string()))
        .collect()
}

/// Random formulas over a fixed set of atoms.
#[derive(Debug, Clone)]
pub struct FormulaPool {
    atoms: Vec<Formula>,
    depth: usize,
}

impl FormulaPool {
    pub fn new(atoms: usize, depth: usize) -> Self {
        assert!(atoms > 0, "a formula pool needs at least one atom");
        FormulaPool {
            atoms: atom_names(atoms).iter().map(Formula::atom).collect(),
            depth,
        }
    }

    pub fn atoms(&self) -> &[Formula] {
        &self.atoms
    }

    pub fn literals(&self) -> Vec<Formula> {
        self.atoms
            .iter()
            .flat_map(|a| [a.clone(), Formula::not(a.clone())])
            .collect()
    }

    /// Literals plus conjunctions and disjunctions of two distinct literals.
    pub fn shallow(&self) -> Vec<Formula> {
        let literals = self.literals();
        let mut out = literals.clone();
        for (i, x) in literals.iter().enumerate() {
            for y in &literals[i + 1..] {
                out.push(Formula::and(x.clone(), y.clone()));
                out.push(Formula::or(x.clone(), y.clone()));
            }
        }
        out
    }

    pub fn literal(&self, rng: &mut impl Rng) -> Formula {
        let atom = self.atoms.choose(rng).expect("nonempty pool").clone();
        if rng.gen_bool(0.5) {
            Formula::not(atom)
        } else {
            atom
        }
    }

    /// A formula of depth at most the pool depth.
    pub fn random(&self, rng: &mut impl Rng) -> Formula {
        self.random_at(rng, self.depth)
    }

    fn random_at(&self, rng: &mut impl Rng, depth: usize) -> Formula {
        if depth == 0 || rng.gen_bool(0.45) {
            return self.literal(rng);
        }
        let left = self.random_at(rng, depth - 1);
        let right = self.random_at(rng, depth - 1);
        let made = match rng.gen_range(0..4) {
            0 => Formula::and(left, right),
            1 => Formula::or(left, right),
            2 => Formula::implies(left, right),
            _ => Formula::iff(left, right),
        };
        if rng.gen_bool(0.15) {
            Formula::not(made)
        } else {
            made
        }
    }

    pub fn contradiction(&self, rng: &mut impl Rng) -> Formula {
        let l = self.literal(rng);
        match rng.gen_range(0..3) {
            0 => Formula::bottom(),
            1 => Formula::and(l.clone(), Formula::not(l)),
            _ => Formula::not(Formula::or(l.clone(), Formula::not(l))),
        }
    }

    pub fn tautology(&self, rng: &mut impl Rng) -> Formula {
        let l = self.literal(rng);
        match rng.gen_range(0..3) {
            0 => Formula::top(),
            1 => Formula::or(l.clone(), Formula::not(l)),
            _ => Formula::implies(l.clone(), l),
        }
    }

    fn base(&self, rng: &mut impl Rng, sizes: std::ops::RangeInclusive<usize>) -> BeliefBase {
        let size = rng.gen_range(sizes);
        let mut out = BeliefBase::new();
        for _ in 0..size * 4 {
            if out.len() >= size {
                break;
            }
            out = out.with(self.random(rng));
        }
        out
    }
}

fn subset(rng: &mut impl Rng, set: &BeliefBase) -> BeliefBase {
    set.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect()
}

fn truncate(rng: &mut impl Rng, set: BeliefBase, max: usize) -> BeliefBase {
    if set.len() <= max {
        return set;
    }
    let mut items = set.to_vec();
    items.shuffle(rng);
    items.truncate(max);
    items.into_iter().collect()
}

fn generate_one(config: &GeneratorConfig, pool: &FormulaPool, index: usize, seed: u64) -> Instance {
    let rng = &mut ChaCha8Rng::seed_from_u64(seed);
    let mut k = pool.base(rng, 0..=config.max_base);
    let a = pool.base(rng, 1..=config.max_input.max(1));
    let mut a = truncate(rng, a, config.max_input);

    match index % 10 {
        0 => a = BeliefBase::new(),
        1 => a = BeliefBase::from_iter([Formula::bottom()]),
        2 => {
            let n = rng.gen_range(1..=config.max_input.max(1));
            a = (0..n).map(|_| pool.contradiction(rng)).collect();
        }
        3 if config.max_base >= 2 => {
            let l = pool.literal(rng);
            k = truncate(rng, k, config.max_base - 2)
                .with(l.clone())
                .with(Formula::not(l));
        }
        4 if config.max_input > 0 => {
            if k.is_empty() && config.max_base > 0 {
                k = k.with(pool.random(rng));
            }
            if let Some(shared) = k.to_vec().choose(rng) {
                a = truncate(rng, a, config.max_input - 1).with(shared.clone());
            }
        }
        5 if config.max_input > 0 => {
            a = truncate(rng, a, config.max_input - 1).with(pool.tautology(rng));
        }
        _ => {}
    }
    a = truncate(rng, a, config.max_input);

    let b = match rng.gen_range(0..4) {
        0 => a.union(&subset(rng, &k)),
        1 => {
            let mut shared = subset(rng, &k);
            if shared.is_empty() {
                shared = k.iter().take(1).cloned().collect();
            }
            a.difference(&k).union(&shared)
        }
        2 => a.iter().map(|f| Formula::not(Formula::not(f.clone()))).collect(),
        _ => pool.base(rng, 0..=config.max_input),
    };

    let z = rng.gen_bool(0.5).then(|| pool.base(rng, 1..=2));

    let (k2, b2) = match rng.gen_range(0..4) {
        0 => (k.union(&subset(rng, &a)), a.clone()),
        1 => {
            let all = k.union(&a);
            let left = subset(rng, &all);
            let right = all.difference(&left).union(&subset(rng, &left));
            (left, right)
        }
        2 => (k.clone(), b.clone()),
        _ => (
            pool.base(rng, 0..=config.max_base),
            pool.base(rng, 0..=config.max_input),
        ),
    };
    let k2 = truncate(rng, k2, config.max_base);
    let b2 = truncate(rng, b2, config.max_base.max(config.max_input));

    let phi = match rng.gen_range(0..4) {
        0 if !k.is_empty() => k.to_vec().choose(rng).expect("nonempty").clone(),
        1 if !k.is_empty() => Formula::not(k.to_vec().choose(rng).expect("nonempty").clone()),
        2 => pool.tautology(rng),
        _ => pool.random(rng),
    };
    let psi = match rng.gen_range(0..3) {
        0 => phi.clone(),
        1 => Formula::not(phi.clone()),
        _ => pool.random(rng),
    };

    let mut ranked: Vec<Formula> = [&k, &a, &b, &k2, &b2]
        .iter()
        .flat_map(|s| s.iter().cloned())
        .chain(z.iter().flat_map(|s| s.iter().cloned()))
        .chain([
            phi.clone(),
            Formula::not(phi.clone()),
            psi.clone(),
            Formula::not(psi.clone()),
        ])
        .collect::<BeliefBase>()
        .to_vec();
    ranked.shuffle(rng);
    let strategy = Strategy::new(config.strategy, PriorityOrder::preferring(ranked));

    Instance {
        index,
        seed,
        k,
        a,
        b: Some(b),
        z,
        k2,
        b2,
        phi,
        psi,
        strategy,
    }
}

/// Reproducible instances; one in ten of each corner case
/// (`A = ∅`, `A = {⊥}`, `A ≡ {⊥}`, inconsistent `K`, `K ∩ A ≠ ∅`,
/// a tautology in `A`).
pub fn generate_instances(config: &GeneratorConfig) -> impl Iterator<Item = Instance> + '_ {
    let pool = FormulaPool::new(config.atoms.max(1), config.pool_depth);
    let mut master = ChaCha8Rng::seed_from_u64(config.seed);
    (0..config.num).map(move |index| {
        let seed = master.gen::<u64>();
        generate_one(config, &pool, index, seed)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let config = GeneratorConfig {
            num: 40,
            seed: 42,
            ..GeneratorConfig::default()
        };
        let first: Vec<Instance> = generate_instances(&config).collect();
        let second: Vec<Instance> = generate_instances(&config).collect();
        assert_eq!(first, second);
        let other: Vec<Instance> = generate_instances(&GeneratorConfig { seed: 43, ..config }).collect();
        assert_ne!(first, other);
    }

    #[test]
    fn zero_instances() {
        let config = GeneratorConfig {
            num: 0,
            ..GeneratorConfig::default()
        };
        assert_eq!(generate_instances(&config).count(), 0);
    }

    #[test]
    fn sizes_respect_config() {
        let config = GeneratorConfig {
            num: 300,
            seed: 7,
            ..GeneratorConfig::default()
        };
        for inst in generate_instances(&config) {
            assert!(inst.k.len() <= 5, "{}", inst.k);
            assert!(inst.a.len() <= 3, "{}", inst.a);
            assert!(inst.k2.len() <= 5);
        }
    }

    #[test]
    fn corner_cases_appear() {
        let config = GeneratorConfig {
            num: 10,
            seed: 1,
            ..GeneratorConfig::default()
        };
        let all: Vec<Instance> = generate_instances(&config).collect();
        assert!(all[0].a.is_empty());
        assert_eq!(all[1].a, BeliefBase::from_iter([Formula::bottom()]));
        assert!(all[4].k.overlaps(&all[4].a));
        let r = crate::Reasoner::default();
        assert!(!r.is_consistent(&all[3].k).unwrap());
        assert!(r.equivalent_to_falsum(&all[2].a).unwrap());
    }
}
