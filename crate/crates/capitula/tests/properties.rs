//! Randomized and exhaustive property tests: algebraic laws the engine must
//! satisfy regardless of representation choices.

use proptest::prelude::*;
use rand::prelude::*;
use rand::rngs::StdRng;
use rand::Rng as _;

use capitula::artin::{s4_permutations, CapitulationType, Transfer};
use capitula::cubic::{conductor_and_species, cubic_residue_symbol, normalize_radicand, CubicSymbol};
use capitula::fixtures::{load_catalog, CatalogEntry};
use capitula::group::brute_force_elements;
use capitula::{Group, Perm};

fn rank_two_catalog() -> Vec<(String, Group)> {
    load_catalog(None)
        .unwrap()
        .iter()
        .filter_map(|e: &CatalogEntry| {
            let g = e.group().unwrap();
            // rank two ⇔ exactly four maximal subgroups
            let rank_two = g.log3_order().is_ok()
                && g.maximal_subgroups().map(|m| m.len() == 4).unwrap_or(false);
            if rank_two {
                Some((e.name.clone(), g))
            } else {
                None
            }
        })
        .collect()
}

fn random_element(g: &Group, rng: &mut StdRng) -> Perm {
    let mut x = Perm::identity(g.degree());
    for _ in 0..10 {
        x = x.mul(g.gens().choose(rng).unwrap());
    }
    x
}

/// The transfer value does not depend on the transversal choice.
#[test]
fn transfer_transversal_independence() {
    let mut rng = StdRng::seed_from_u64(7);
    for (name, g) in rank_two_catalog() {
        if g.order() > 243 {
            continue; // larger groups are covered by the fixed-transversal oracle tests
        }
        for m in g.maximal_subgroups().unwrap() {
            let reference = Transfer::new(&g, &m).unwrap();
            let m_els = m.elements_capped(100, "transversal randomization").unwrap();
            let base = capitula::artin::right_transversal(&g, &m).unwrap();
            for _ in 0..5 {
                let randomized: Vec<Perm> = base
                    .iter()
                    .map(|t| m_els.choose(&mut rng).unwrap().mul(t))
                    .collect();
                let tr = Transfer::with_transversal(&g, &m, randomized).unwrap();
                for _ in 0..10 {
                    let x = random_element(&g, &mut rng);
                    assert_eq!(
                        tr.eval(&x).unwrap(),
                        reference.eval(&x).unwrap(),
                        "transversal changed the transfer value in {name}"
                    );
                }
            }
        }
    }
}

/// V(gh) = V(g)·V(h) in M/M′.
#[test]
fn transfer_is_a_homomorphism() {
    let mut rng = StdRng::seed_from_u64(11);
    for (name, g) in rank_two_catalog() {
        let pairs = if g.order() <= 243 { 100 } else { 10 };
        for m in g.maximal_subgroups().unwrap() {
            let tr = Transfer::new(&g, &m).unwrap();
            for _ in 0..pairs {
                let x = random_element(&g, &mut rng);
                let y = random_element(&g, &mut rng);
                let vx = tr.eval(&x).unwrap();
                let vy = tr.eval(&y).unwrap();
                let vxy = tr.eval(&x.mul(&y)).unwrap();
                assert_eq!(
                    vxy,
                    tr.target.mul_indices(vx, vy).unwrap(),
                    "homomorphism law failed in {name}"
                );
            }
        }
    }
}

/// Every transfer out of a rank-two 3-group has a nontrivial kernel in the
/// abelianization (principalization is never empty).
#[test]
fn transfer_kernels_are_nontrivial() {
    for (name, g) in rank_two_catalog() {
        let derived = g.derived_subgroup();
        let gq = g.quotient(&derived).unwrap();
        for m in g.maximal_subgroups().unwrap() {
            let tr = Transfer::new(&g, &m).unwrap();
            let ker = tr.kernel_in_abelianization(&gq).unwrap();
            assert!(ker.len() >= 3, "kernel of order < 3 in {name}");
        }
    }
}

/// Canonical form and feature counts are invariant under the 24 equivalence
/// relabelings.
#[test]
fn equivalence_orbit_invariance() {
    let tuples = ["4001", "3010", "0043", "0402", "0320", "3210", "0243", "1320"];
    for raw in tuples {
        let k: CapitulationType = raw.parse().unwrap();
        let canon = k.canonical();
        let (fp, tr) = k.features();
        for pi in s4_permutations() {
            let r = k.relabel(&pi);
            assert_eq!(r.canonical(), canon, "canonical form moved under relabeling of {raw}");
            let (fp2, tr2) = r.features();
            assert_eq!(fp2.len(), fp.len(), "fixed-point count changed for {raw}");
            assert_eq!(tr2.len(), tr.len(), "transposition count changed for {raw}");
        }
    }
}

fn all_tuples() -> Vec<CapitulationType> {
    let mut out = Vec::with_capacity(625);
    for a in 0..5u8 {
        for b in 0..5u8 {
            for c in 0..5u8 {
                for d in 0..5u8 {
                    out.push(CapitulationType::new([a, b, c, d]).unwrap());
                }
            }
        }
    }
    out
}

/// The refinement relation is a partial order on all 5^4 tuples:
/// reflexive, antisymmetric, transitive. Transitivity is checked through
/// bitset reachability rather than a cubic scan.
#[test]
fn partial_order_axioms_exhaustive() {
    let ts = all_tuples();
    let n = ts.len();
    const WORDS: usize = 10; // ceil(625 / 64)
    let mut rows = vec![[0u64; WORDS]; n];
    for i in 0..n {
        assert!(ts[i].leq(&ts[i]), "reflexivity failed at {i}");
        for j in 0..n {
            if ts[i].leq(&ts[j]) {
                rows[i][j / 64] |= 1 << (j % 64);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let ij = rows[i][j / 64] >> (j % 64) & 1 == 1;
            let ji = rows[j][i / 64] >> (i % 64) & 1 == 1;
            if ij && ji {
                assert_eq!(ts[i], ts[j], "antisymmetry failed");
            }
            if ij {
                // transitivity: everything above j must be above i
                for w in 0..WORDS {
                    assert_eq!(
                        rows[j][w] & !rows[i][w],
                        0,
                        "transitivity failed at ({i},{j})"
                    );
                }
            }
        }
    }
}

/// Stabilizer-chain membership agrees with brute-force closure and does not
/// depend on generator order.
#[test]
fn chain_membership_vs_shuffled_generators() {
    let mut rng = StdRng::seed_from_u64(23);
    for e in load_catalog(None).unwrap() {
        let g = e.group().unwrap();
        if g.order() > 1000 {
            continue;
        }
        let els = brute_force_elements(g.degree(), g.gens(), 1001).unwrap();
        for _ in 0..3 {
            let mut gens = g.gens().to_vec();
            gens.shuffle(&mut rng);
            let h = Group::from_perms(g.degree(), gens).unwrap();
            assert_eq!(h.order(), els.len() as u64, "shuffled generators changed the order");
            for x in els.iter().step_by(7) {
                assert!(h.has(x));
            }
        }
    }
}

/// The cubic residue classes form a homomorphism onto Z/3.
#[test]
fn residue_symbol_multiplicative() {
    let class = |s: CubicSymbol| match s {
        CubicSymbol::Residue => 0u64,
        CubicSymbol::NonresidueClass1 => 1,
        CubicSymbol::NonresidueClass2 => 2,
    };
    let mut rng = StdRng::seed_from_u64(31);
    for p in (7..1000u64).filter(|p| p % 3 == 1 && (2..*p).all(|d| d * d > *p || p % d != 0)) {
        let count = (1..p)
            .filter(|&x| cubic_residue_symbol(x, p).unwrap() == CubicSymbol::Residue)
            .count() as u64;
        assert_eq!(count, (p - 1) / 3, "residue count at p={p}");
        for _ in 0..20 {
            let x = rng.gen_range(1..p);
            let y = rng.gen_range(1..p);
            let sx = class(cubic_residue_symbol(x, p).unwrap());
            let sy = class(cubic_residue_symbol(y, p).unwrap());
            let sxy = class(cubic_residue_symbol(x * y % p, p).unwrap());
            assert_eq!(sxy, (sx + sy) % 3, "multiplicativity at p={p}, x={x}, y={y}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Both radicands of a field (ab² and a²b) give the same conductor.
    #[test]
    fn conductor_conjugation_invariance(n in 2u64..20000) {
        if let Ok(p) = normalize_radicand(n) {
            let conj = p.a * p.a * p.b;
            if conj >= 2 {
                let c1 = conductor_and_species(n).unwrap().conductor;
                let c2 = conductor_and_species(conj).unwrap().conductor;
                prop_assert_eq!(c1, c2);
            }
        }
    }

    /// Abelian invariants of a direct product of cyclic 3-groups are the
    /// multiset of exponents.
    #[test]
    fn abelian_invariants_of_cyclic_products(exps in proptest::collection::vec(1u32..=3, 1..=3)) {
        // stay under the element-enumeration cap of 3^8
        prop_assume!(exps.iter().sum::<u32>() <= 8);
        let mut gens: Vec<String> = Vec::new();
        let mut offset = 0usize;
        for &e in &exps {
            let len = 3usize.pow(e);
            let cycle: Vec<String> = (1..=len).map(|i| (offset + i).to_string()).collect();
            gens.push(format!("({})", cycle.join(",")));
            offset += len;
        }
        let gen_refs: Vec<&str> = gens.iter().map(|s| s.as_str()).collect();
        let g = Group::from_cycles(offset, &gen_refs).unwrap();
        let mut want: Vec<u8> = exps.iter().map(|&e| e as u8).collect();
        want.sort_unstable_by(|a, b| b.cmp(a));
        prop_assert_eq!(g.abelian_invariants().unwrap().log3().unwrap(), want);
    }
}
