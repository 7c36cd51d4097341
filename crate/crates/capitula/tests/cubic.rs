//! Radicand/conductor arithmetic tests. Worked examples frozen from direct
//! integer computation.

use capitula::cubic::{
    admissible_capitulation_types, aux_type_of_prime, classify_conductor, conductor_and_species,
    cubic_residue_symbol, herbrand_kernel_size, multiplicity, normalize_radicand, AuxType,
    ConductorShape, CubicSymbol, Species, GAMMA_PRIMES,
};
use capitula::error::Error;

#[test]
fn normalize_examples() {
    let p = normalize_radicand(4598).unwrap();
    assert_eq!((p.n, p.a, p.b), (4598, 38, 11), "4598 = 2·11²·19 with b=11 < a=38");
    assert!(p.input_was_normalized);

    // cube factors are stripped: 24 = 8·3 → 3
    let p = normalize_radicand(24).unwrap();
    assert_eq!(p.n, 3);

    // 18 = 2·3² has b=3 > a=2, so the conjugate 12 = 2²·3 is returned
    let p = normalize_radicand(18).unwrap();
    assert_eq!((p.n, p.a, p.b), (12, 3, 2));
    assert!(!p.input_was_normalized);

    assert!(normalize_radicand(1).is_err());
    assert!(matches!(normalize_radicand(27), Err(Error::BadRadicand(..))));
    assert!(matches!(normalize_radicand(8), Err(Error::BadRadicand(..))));
}

#[test]
fn conductor_and_species_examples() {
    let p = conductor_and_species(146).unwrap();
    assert_eq!((p.conductor, p.species), (438, Species::IB), "146 = 2·73 ≡ 2 (mod 9)");
    let p = conductor_and_species(836).unwrap();
    assert_eq!((p.conductor, p.species), (418, Species::II), "836 ≡ -1 (mod 9)");
    let p = conductor_and_species(438).unwrap();
    assert_eq!((p.conductor, p.species), (1314, Species::IA), "438 = 2·3·73");
}

#[test]
fn conductor_is_conjugation_invariant_sample() {
    // both representatives of the same field give the same conductor
    assert_eq!(
        conductor_and_species(18).unwrap().conductor,
        conductor_and_species(12).unwrap().conductor
    );
    assert_eq!(
        conductor_and_species(836).unwrap().conductor,
        conductor_and_species(4598).unwrap().conductor
    );
}

#[test]
fn classify_conductor_examples() {
    match classify_conductor(418) {
        ConductorShape::Pq1q2 { p, q1, q2 } => assert_eq!((p, q1, q2), (19, 2, 11)),
        s => panic!("unexpected shape {s:?}"),
    }
    match classify_conductor(3246) {
        ConductorShape::ThreePq { p, q } => assert_eq!((p, q), (541, 2)),
        s => panic!("unexpected shape {s:?}"),
    }
    match classify_conductor(4869) {
        ConductorShape::Other => {}
        s => panic!("9·541 is outside the three shapes, got {s:?}"),
    }
}

#[test]
fn multiplicity_examples() {
    let (m, r) = multiplicity(418).unwrap();
    assert_eq!((m, r), (2, vec![836, 4598]));
    let (m, r) = multiplicity(1314).unwrap();
    assert_eq!((m, r), (4, vec![438, 876, 1314, 2628]));
    let (m, r) = multiplicity(3285).unwrap();
    assert_eq!((m, r), (4, vec![1095, 3285, 5475, 16425]));
}

#[test]
fn cubic_residue_examples() {
    assert_eq!(cubic_residue_symbol(11, 19).unwrap(), CubicSymbol::Residue);
    assert_eq!(cubic_residue_symbol(23, 37).unwrap(), CubicSymbol::Residue);
    assert_ne!(cubic_residue_symbol(2, 7).unwrap(), CubicSymbol::Residue);
    // p ≢ 1 (mod 3) rejected
    assert!(matches!(cubic_residue_symbol(2, 5), Err(Error::BadResiduePrime(_))));
    // p | x is the caller's exception, surfaced as an error
    assert!(matches!(cubic_residue_symbol(38, 19), Err(Error::ResidueDivisible(_, _))));
}

#[test]
fn residue_count_small_prime() {
    // exactly (p-1)/3 of the nonzero classes are residues
    let p = 19;
    let count = (1..p).filter(|&x| cubic_residue_symbol(x, p).unwrap() == CubicSymbol::Residue).count();
    assert_eq!(count, 6);
}

#[test]
fn admissible_types_case_split() {
    assert_eq!(admissible_capitulation_types(AuxType::Gamma, 3).unwrap(), vec!["a.2", "a.1"]);
    assert_eq!(admissible_capitulation_types(AuxType::Gamma, 1).unwrap(), vec!["d.23", "b.10"]);
    assert_eq!(admissible_capitulation_types(AuxType::Alpha, 3).unwrap(), vec!["a.1"]);
    assert_eq!(admissible_capitulation_types(AuxType::Alpha, 1).unwrap(), vec!["b.10"]);
    assert!(matches!(
        admissible_capitulation_types(AuxType::Alpha, 2),
        Err(Error::BadUnitNormIndex(2))
    ));
}

#[test]
fn herbrand_kernel_sizes() {
    assert_eq!(herbrand_kernel_size(1).unwrap(), 3);
    assert_eq!(herbrand_kernel_size(3).unwrap(), 9);
    assert!(herbrand_kernel_size(2).is_err());
}

#[test]
fn aux_type_assignment() {
    for p in GAMMA_PRIMES {
        assert_eq!(aux_type_of_prime(p), AuxType::Gamma);
    }
    assert_eq!(aux_type_of_prime(19), AuxType::Alpha);
    assert_eq!(aux_type_of_prime(37), AuxType::Alpha);
}

/// The minimality statement: both admissible types at (γ, 1) dominate the
/// minimal type (1320) in the partial order.
#[test]
fn gamma_partial_capitulation_minimality() {
    use capitula::artin::{CapitulationType, NAMED_TYPES};
    let minimal: CapitulationType = "1320".parse().unwrap();
    for name in admissible_capitulation_types(AuxType::Gamma, 1).unwrap() {
        let rep = NAMED_TYPES.iter().find(|(n, _)| *n == name).unwrap().1;
        assert!(minimal.leq(&CapitulationType(rep)), "{name} must dominate (1320)");
    }
}
