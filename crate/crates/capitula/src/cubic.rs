//! Pure-cubic-field arithmetic without class field theory: radicand
//! normalization, conductor and Dedekind species, conductor-shape
//! classification, multiplicity by enumeration, the cubic residue symbol,
//! the admissible capitulation-type case split, and the Herbrand
//! kernel-size link.

use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// Trial-division factorization (inputs here are < 10⁶, well within range).
pub fn factorize(mut n: u64) -> BTreeMap<u64, u32> {
    let mut out = BTreeMap::new();
    let mut d = 2;
    while d * d <= n {
        while n % d == 0 {
            *out.entry(d).or_insert(0) += 1;
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        *out.entry(n).or_insert(0) += 1;
    }
    out
}

/// Squarefree kernel (product of distinct prime divisors).
pub fn radical(n: u64) -> u64 {
    factorize(n).keys().product()
}

fn is_prime(n: u64) -> bool {
    n > 1 && factorize(n).len() == 1 && factorize(n).values().sum::<u32>() == 1
}

/// Dedekind species of a cube-free radicand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Species {
    /// 3 | n.
    IA,
    /// 3 ∤ n and n ≢ ±1 (mod 9).
    IB,
    /// n ≡ ±1 (mod 9).
    II,
}

impl std::fmt::Display for Species {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Species::IA => write!(f, "IA"),
            Species::IB => write!(f, "IB"),
            Species::II => write!(f, "II"),
        }
    }
}

/// A normalized cube-free radicand n = a·b² with its conductor data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicandProfile {
    /// The normalized cube-free radicand.
    pub n: u64,
    /// Squarefree coprime parts with n = a·b² and b < a.
    pub a: u64,
    pub b: u64,
    /// Whether the input was already the normalized representative.
    pub input_was_normalized: bool,
    pub conductor: u64,
    pub species: Species,
    /// Residue class mod 9 of each prime divisor of n.
    pub prime_classes: BTreeMap<u64, u64>,
}

fn species_of(n: u64) -> Species {
    if n % 3 == 0 {
        Species::IA
    } else if n % 9 == 1 || n % 9 == 8 {
        Species::II
    } else {
        Species::IB
    }
}

fn conductor_of(n: u64) -> u64 {
    match species_of(n) {
        Species::II => radical(n),
        Species::IB => 3 * radical(n),
        Species::IA => {
            let mut m = n;
            while m % 3 == 0 {
                m /= 3;
            }
            9 * radical(m)
        }
    }
}

/// Strips cube factors and picks, between the conjugate representatives
/// a·b² and a²·b, the one with b < a. Errors on n < 2 and on perfect cubes.
pub fn normalize_radicand(n: u64) -> Result<RadicandProfile> {
    if n < 2 {
        return Err(Error::BadRadicand(n, "radicand must be at least 2"));
    }
    let mut a = 1u64;
    let mut b = 1u64;
    for (p, e) in factorize(n) {
        match e % 3 {
            1 => a *= p,
            2 => b *= p,
            _ => {}
        }
    }
    if a == 1 && b == 1 {
        return Err(Error::BadRadicand(n, "perfect cube"));
    }
    // conjugate representative swaps the roles of a and b
    let (a, b) = if b < a { (a, b) } else { (b, a) };
    let normalized = a * b * b;
    let species = species_of(normalized);
    let conductor = conductor_of(normalized);
    let prime_classes = factorize(normalized)
        .keys()
        .map(|&p| (p, p % 9))
        .collect();
    Ok(RadicandProfile {
        n: normalized,
        a,
        b,
        input_was_normalized: normalized == n,
        conductor,
        species,
        prime_classes,
    })
}

/// Conductor and species of a cube-free radicand (callers normalize first);
/// conjugation-invariant.
pub fn conductor_and_species(n: u64) -> Result<RadicandProfile> {
    normalize_radicand(n)
}

/// Shape of a conductor against the three admissible decompositions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConductorShape {
    /// f = p·q₁·q₂ with 3 ∤ f, p ≡ 1 (mod 9), q₁,q₂ ≡ 2,5 (mod 9).
    Pq1q2 { p: u64, q1: u64, q2: u64 },
    /// f = 3·p·q.
    ThreePq { p: u64, q: u64 },
    /// f = 9·p·q.
    NinePq { p: u64, q: u64 },
    Other,
}

/// Matches f against {p·q₁·q₂, 3·p·q, 9·p·q} with the congruence checks.
pub fn classify_conductor(f: u64) -> ConductorShape {
    let fac = factorize(f);
    let v3 = fac.get(&3).copied().unwrap_or(0);
    let odd: Vec<(u64, u32)> = fac.iter().filter(|(&p, _)| p != 3).map(|(&p, &e)| (p, e)).collect();
    if odd.iter().any(|&(_, e)| e != 1) {
        return ConductorShape::Other;
    }
    let ps: Vec<u64> = odd.iter().map(|&(p, _)| p).filter(|&p| p % 9 == 1).collect();
    let qs: Vec<u64> = odd
        .iter()
        .map(|&(p, _)| p)
        .filter(|&p| p % 9 == 2 || p % 9 == 5)
        .collect();
    if ps.len() + qs.len() != odd.len() || ps.len() != 1 {
        return ConductorShape::Other;
    }
    let p = ps[0];
    match (v3, qs.len()) {
        (0, 2) => ConductorShape::Pq1q2 {
            p,
            q1: qs[0].min(qs[1]),
            q2: qs[0].max(qs[1]),
        },
        (1, 1) => ConductorShape::ThreePq { p, q: qs[0] },
        (2, 1) => ConductorShape::NinePq { p, q: qs[0] },
        _ => ConductorShape::Other,
    }
}

/// Multiplicity by exhaustive enumeration: exponent vectors over the prime
/// support with entries in {1,2}, conjugates folded by normalization, and
/// candidates filtered by the species congruence and the conductor.
/// Supports any conductor whose shape determines the species
/// (9|f → IA, 3||f → IB, 3∤f → II).
pub fn multiplicity(f: u64) -> Result<(usize, Vec<u64>)> {
    if f < 2 {
        return Err(Error::BadRadicand(f, "conductor must be at least 2"));
    }
    let (support, want): (Vec<u64>, Species) = if f % 9 == 0 {
        let mut s: Vec<u64> = factorize(f / 9).keys().copied().collect();
        s.push(3);
        (s, Species::IA)
    } else if f % 3 == 0 {
        (factorize(f / 3).keys().copied().collect(), Species::IB)
    } else {
        (factorize(f).keys().copied().collect(), Species::II)
    };
    let mut reps: Vec<u64> = Vec::new();
    let k = support.len();
    for mask in 0..(1u32 << k) {
        let mut n: u64 = 1;
        for (i, &p) in support.iter().enumerate() {
            let e = if mask & (1 << i) != 0 { 2 } else { 1 };
            n = n.saturating_mul(p.pow(e));
        }
        let profile = normalize_radicand(n)?;
        if profile.species == want && profile.conductor == f && !reps.contains(&profile.n) {
            reps.push(profile.n);
        }
    }
    reps.sort_unstable();
    Ok((reps.len(), reps))
}

/// Value of the cubic residue symbol x^((p−1)/3) mod p, with a stable
/// labeling of the two nonresidue classes by the numerically smaller
/// primitive cube root of unity mod p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CubicSymbol {
    Residue,
    NonresidueClass1,
    NonresidueClass2,
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u128 = 1;
    let mm = m as u128;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % mm;
        }
        b = b * b % mm;
        exp >>= 1;
    }
    acc as u64
}

/// Computes the cubic residue symbol of x mod p for p ≡ 1 (mod 3).
pub fn cubic_residue_symbol(x: u64, p: u64) -> Result<CubicSymbol> {
    if !is_prime(p) || p % 3 != 1 {
        return Err(Error::BadResiduePrime(p));
    }
    if x % p == 0 {
        return Err(Error::ResidueDivisible(x, p));
    }
    let v = pow_mod(x, (p - 1) / 3, p);
    if v == 1 {
        return Ok(CubicSymbol::Residue);
    }
    // the two primitive cube roots of unity mod p are v and v² (mod p);
    // label class 1 as the numerically smaller root
    let v2 = (v as u128 * v as u128 % p as u128) as u64;
    if v < v2 {
        Ok(CubicSymbol::NonresidueClass1)
    } else {
        Ok(CubicSymbol::NonresidueClass2)
    }
}

/// Differential-principal-factorization type of the auxiliary field ℚ(∛p).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuxType {
    Alpha,
    Gamma,
}

/// The primes known (from the source tables' range) to have auxiliary DPF
/// type γ; every other prime in that range is type α.
pub const GAMMA_PRIMES: [u64; 3] = [541, 919, 1279];

/// Auxiliary DPF type lookup for a prime p ≡ 1 (mod 9) in the tables' range.
pub fn aux_type_of_prime(p: u64) -> AuxType {
    if GAMMA_PRIMES.contains(&p) {
        AuxType::Gamma
    } else {
        AuxType::Alpha
    }
}

/// The four-way case split for admissible capitulation types:
/// (γ,3) → {a.2, a.1}; (γ,1) → {d.23, b.10}; (α,3) → {a.1}; (α,1) → {b.10}.
pub fn admissible_capitulation_types(
    aux: AuxType,
    unit_norm_index: u64,
) -> Result<Vec<&'static str>> {
    if unit_norm_index != 1 && unit_norm_index != 3 {
        return Err(Error::BadUnitNormIndex(unit_norm_index));
    }
    Ok(match (aux, unit_norm_index) {
        (AuxType::Gamma, 3) => vec!["a.2", "a.1"],
        (AuxType::Gamma, 1) => vec!["d.23", "b.10"],
        (AuxType::Alpha, 3) => vec!["a.1"],
        (AuxType::Alpha, 1) => vec!["b.10"],
        _ => unreachable!(),
    })
}

/// Herbrand kernel size 3 · (unit norm index): 3 ↔ partial capitulation,
/// 9 ↔ total.
pub fn herbrand_kernel_size(unit_norm_index: u64) -> Result<u64> {
    if unit_norm_index != 1 && unit_norm_index != 3 {
        return Err(Error::BadUnitNormIndex(unit_norm_index));
    }
    Ok(3 * unit_norm_index)
}
