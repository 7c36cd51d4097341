//! Tower-theoretic and structural invariants: class/coclass, the two-step
//! centralizer, metabelian/metacyclic predicates, the Huppert checker,
//! little two-stage tower quotients, Shafarevich bounds, and the
//! coclass-from-ATI rule.

use crate::artin::LogType;
use crate::error::{Error, Result};
use crate::group::{is_isomorphic_small, Group, Quotient, CENTRALIZER_QUOTIENT_CAP};

/// Order cap for the metacyclic search.
pub const METACYCLIC_CAP: u64 = 729;

/// Structural summary of a finite 3-group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub order: u64,
    pub class: u32,
    /// cc(G) = log₃(order) − cl(G).
    pub coclass: u32,
    pub metabelian: bool,
    /// None when the order exceeds the metacyclic search cap (3^6).
    pub metacyclic: Option<bool>,
    pub maximal_class: bool,
}

/// Computes order/class/coclass and the metabelian/metacyclic predicates.
pub fn structure_report(g: &Group) -> Result<StructureReport> {
    let e = g.log3_order()?;
    let class = g
        .nilpotency_class()
        .ok_or_else(|| Error::Other("3-group must be nilpotent".into()))?;
    let coclass = e - class;
    let metabelian = g.derived_subgroup().derived_subgroup().is_trivial();
    let metacyclic = match is_metacyclic(g) {
        Ok(b) => Some(b),
        Err(Error::CapExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(StructureReport {
        order: g.order(),
        class,
        coclass,
        metabelian,
        metacyclic,
        maximal_class: coclass == 1 && g.order() >= 9,
    })
}

/// Metacyclic test by search: some cyclic normal subgroup ⟨x⟩ has cyclic
/// quotient. Capped at order 3^6.
pub fn is_metacyclic(g: &Group) -> Result<bool> {
    if g.order() > METACYCLIC_CAP {
        return Err(Error::CapExceeded {
            what: "metacyclic search",
            size: g.order() as usize,
            cap: METACYCLIC_CAP as usize,
        });
    }
    if g.order() == 1 {
        return Ok(true);
    }
    let elems = g.elements_capped(METACYCLIC_CAP, "metacyclic search")?;
    // iterate candidates by descending element order: larger cyclic kernels
    // succeed (or fail) faster
    let mut by_order: Vec<&crate::perm::Perm> = elems.iter().collect();
    by_order.sort_by_key(|e| std::cmp::Reverse(e.order()));
    for x in by_order {
        if x.is_identity() {
            continue;
        }
        let c = g.subgroup(vec![x.clone()])?;
        if !g.normalizes(&c) {
            continue;
        }
        let q = g.quotient(&c)?;
        if is_cyclic(&q.group) {
            return Ok(true);
        }
    }
    Ok(false)
}

fn is_cyclic(g: &Group) -> bool {
    if g.order() == 1 {
        return true;
    }
    match g.elements_capped(METACYCLIC_CAP, "cyclicity check") {
        Ok(elems) => elems.iter().any(|e| e.order() as u64 == g.order()),
        Err(_) => false,
    }
}

/// The two-step centralizer γ₁: the preimage in G of the centralizer of
/// γ₂/γ₄ in G/γ₄ (with γ₄ = 1 allowed).
pub fn two_step_centralizer(g: &Group) -> Result<Group> {
    g.log3_order()?;
    let series = g.lower_central_series();
    let gamma2 = series.get(1).cloned().unwrap_or_else(|| trivial_like(g));
    let gamma4 = series.get(3).cloned().unwrap_or_else(|| trivial_like(g));
    if g.order() / gamma4.order() > CENTRALIZER_QUOTIENT_CAP {
        return Err(Error::CapExceeded {
            what: "two-step centralizer quotient",
            size: (g.order() / gamma4.order()) as usize,
            cap: CENTRALIZER_QUOTIENT_CAP as usize,
        });
    }
    // S must contain N: take the join of γ₂ and γ₄ (γ₄ ⊆ γ₂ anyway)
    let mut sgens = gamma2.gens().to_vec();
    sgens.extend(gamma4.gens().iter().cloned());
    let s = g.subgroup(sgens)?;
    g.centralizer_in_quotient(&gamma4, &s)
}

fn trivial_like(g: &Group) -> Group {
    Group::from_perms(g.degree(), Vec::new()).expect("trivial group")
}

/// Verdict of the Huppert criterion check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HuppertVerdict {
    /// G is not of maximal class with order ≥ 3⁵; carries the sub-result of
    /// running the conclusion test anyway (None if an enumeration cap
    /// prevented evaluating it).
    HypothesisNotMet { conclusion_holds: Option<bool> },
    ConclusionHolds,
    Counterexample,
}

/// Tests the Huppert criterion: hypothesis is maximal class and order ≥ 3⁵;
/// conclusion is metabelian(G) ∧ metacyclic(γ₁) ∧ cl(γ₁) ≤ 2.
pub fn huppert_check(g: &Group) -> Result<HuppertVerdict> {
    let report = structure_report(g)?;
    let hypothesis = report.maximal_class && report.order >= 243;
    let conclusion = match huppert_conclusion(g, &report) {
        Ok(b) => Some(b),
        Err(Error::CapExceeded { .. }) if !hypothesis => None,
        Err(e) => return Err(e),
    };
    if !hypothesis {
        return Ok(HuppertVerdict::HypothesisNotMet {
            conclusion_holds: conclusion,
        });
    }
    if conclusion == Some(true) {
        Ok(HuppertVerdict::ConclusionHolds)
    } else {
        Ok(HuppertVerdict::Counterexample)
    }
}

fn huppert_conclusion(g: &Group, report: &StructureReport) -> Result<bool> {
    if !report.metabelian {
        return Ok(false);
    }
    let gamma1 = two_step_centralizer(g)?;
    if !is_metacyclic(&gamma1)? {
        return Ok(false);
    }
    let g1_class = gamma1
        .nilpotency_class()
        .ok_or_else(|| Error::Other("3-group must be nilpotent".into()))?;
    Ok(g1_class <= 2)
}

/// One little two-stage tower: 𝔊ᵢ = G/Mᵢ′ with the distinguished abelian
/// 𝔄ᵢ = Mᵢ/Mᵢ′.
pub struct LittleTower {
    pub quotient: Quotient,
    pub distinguished_abelian: LogType,
}

/// Little tower groups per maximal subgroup; when 𝔄ᵢ ≅ (3,3,3) the quotient
/// is asserted isomorphic to the order-81 Sylow 3-subgroup of A₉.
pub fn little_tower_groups(g: &Group) -> Result<Vec<LittleTower>> {
    let derived = g.derived_subgroup();
    let ab = g.quotient(&derived)?.group.abelian_invariants()?;
    if ab.prime_powers != vec![3, 3] {
        return Err(Error::NotRankTwo(
            ab.prime_powers.iter().map(|&x| x as usize).collect(),
        ));
    }
    let mut out = Vec::new();
    for m in g.maximal_subgroups()? {
        let md = m.derived_subgroup();
        let ai = m.quotient(&md)?.group.abelian_invariants()?;
        let quotient = g.quotient(&md)?;
        let log = LogType(ai.log3()?);
        if log.0 == vec![1, 1, 1] {
            let syl = Group::from_cycles(
                9,
                &["(1,2,3)", "(4,5,6)", "(7,8,9)", "(1,4,7)(2,5,8)(3,6,9)"],
            )?;
            if !is_isomorphic_small(&quotient.group, &syl)? {
                return Err(Error::Other(
                    "elementary tricyclic tower group is not the expected order-81 group".into(),
                ));
            }
        }
        out.push(LittleTower {
            quotient,
            distinguished_abelian: log,
        });
    }
    Ok(out)
}

/// Inputs for the Shafarevich relation-rank bound.
#[derive(Clone, Copy, Debug)]
pub struct ShafarevichInput {
    /// 3-class rank ϱ.
    pub rho: u32,
    pub r1: u32,
    pub r2: u32,
    /// 1 if the base field contains the cube roots of unity, else 0.
    pub theta: u32,
    pub claimed_d2: Option<u32>,
}

/// The bound ϱ ≤ d₂ ≤ ϱ + (r₁ + r₂ − 1) + θ, plus a range check of any
/// claimed d₂.
pub fn shafarevich_interval(inp: &ShafarevichInput) -> Result<(u32, u32, Option<bool>)> {
    if inp.r1 + inp.r2 == 0 {
        return Err(Error::ZeroUnitRank);
    }
    let lo = inp.rho;
    let hi = inp.rho + (inp.r1 + inp.r2 - 1) + inp.theta;
    let ok = inp.claimed_d2.map(|d2| lo <= d2 && d2 <= hi);
    Ok((lo, hi, ok))
}

/// Coclass read off a logarithmic ATI component: sum of exponents minus 1.
pub fn coclass_from_ati(component: &LogType) -> Result<u32> {
    if component.0.is_empty() {
        return Err(Error::EmptyComponent);
    }
    Ok(component.0.iter().map(|&e| e as u32).sum::<u32>() - 1)
}
