//! Artin transfer computation and the capitulation-type algebra: transfer
//! kernel types (TKT), transfer target types (TTT/ATI), the Artin pattern,
//! equivalence and naming, the partial order, and structural features.

use crate::error::{Error, Result};
use crate::group::{Group, Quotient, ABELIAN_ENUM_CAP};
use crate::perm::Perm;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

/// A capitulation type ϰ: 4 entries over {0..4}. Entry 0 encodes total
/// capitulation; entries 1..4 reference maximal-subgroup positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CapitulationType(pub [u8; 4]);

impl CapitulationType {
    pub fn new(entries: [u8; 4]) -> Result<Self> {
        for &e in &entries {
            if e > 4 {
                return Err(Error::BadTktEntry(e));
            }
        }
        Ok(CapitulationType(entries))
    }

    /// Applies the equivalence action of π ∈ S₄ (as images of 1..4):
    /// ϰ′ᵢ = π̃(ϰ_{π⁻¹(i)}) with π̃ extending π by π̃(0) = 0.
    pub fn relabel(&self, pi: &[u8; 4]) -> CapitulationType {
        let mut inv = [0u8; 5];
        for (i, &v) in pi.iter().enumerate() {
            inv[v as usize] = i as u8 + 1;
        }
        let ext = |x: u8| if x == 0 { 0 } else { pi[x as usize - 1] };
        let mut out = [0u8; 4];
        for i in 1..=4usize {
            out[i - 1] = ext(self.0[inv[i] as usize - 1]);
        }
        CapitulationType(out)
    }

    /// Lexicographic minimum over the 24-element relabeling orbit.
    pub fn canonical(&self) -> CapitulationType {
        let mut best = *self;
        for pi in s4_permutations() {
            let cand = self.relabel(&pi);
            if cand.0 < best.0 {
                best = cand;
            }
        }
        best
    }

    /// Canonical form plus the paper-taxonomy name (or "unnamed").
    pub fn canonicalize(&self) -> (CapitulationType, &'static str) {
        let c = self.canonical();
        let name = NAMED_TYPES
            .iter()
            .find(|(_, rep)| CapitulationType(*rep).canonical() == c)
            .map(|(n, _)| *n)
            .unwrap_or("unnamed");
        (c, name)
    }

    /// Partial order: k ≤ l iff for every i, kᵢ = lᵢ or lᵢ = 0.
    pub fn leq(&self, other: &CapitulationType) -> bool {
        self.0
            .iter()
            .zip(&other.0)
            .all(|(&k, &l)| k == l || l == 0)
    }

    /// Fixed points (ϰᵢ = i) and transpositions (ϰᵢ = j, ϰⱼ = i, i ≠ j).
    pub fn features(&self) -> (BTreeSet<u8>, BTreeSet<(u8, u8)>) {
        let mut fixed = BTreeSet::new();
        let mut trans = BTreeSet::new();
        for i in 1..=4u8 {
            if self.0[i as usize - 1] == i {
                fixed.insert(i);
            }
            for j in (i + 1)..=4 {
                if self.0[i as usize - 1] == j && self.0[j as usize - 1] == i {
                    trans.insert((i, j));
                }
            }
        }
        (fixed, trans)
    }
}

impl fmt::Display for CapitulationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}{}{}",
            self.0[0], self.0[1], self.0[2], self.0[3]
        )
    }
}

impl FromStr for CapitulationType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let digits: Vec<u8> = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| c.to_digit(10).map(|d| d as u8).ok_or(Error::BadTktEntry(9)))
            .collect::<Result<Vec<_>>>()?;
        if digits.len() != 4 {
            return Err(Error::BadTktEntry(9));
        }
        CapitulationType::new([digits[0], digits[1], digits[2], digits[3]])
    }
}

/// The named representatives of the paper taxonomy.
pub const NAMED_TYPES: [(&str, [u8; 4]); 6] = [
    ("a.1", [0, 0, 0, 0]),
    ("a.2", [1, 0, 0, 0]),
    ("b.10", [0, 3, 2, 0]),
    ("d.19", [2, 3, 2, 0]),
    ("d.23", [1, 3, 2, 0]),
    ("d.25", [4, 3, 2, 0]),
];

/// All 24 permutations of {1,2,3,4} as image arrays.
pub fn s4_permutations() -> Vec<[u8; 4]> {
    let mut out = Vec::with_capacity(24);
    let mut vals = [1u8, 2, 3, 4];
    heap_permute(&mut vals, 4, &mut out);
    out
}

fn heap_permute(vals: &mut [u8; 4], k: usize, out: &mut Vec<[u8; 4]>) {
    if k == 1 {
        out.push(*vals);
        return;
    }
    for i in 0..k {
        heap_permute(vals, k - 1, out);
        if k % 2 == 0 {
            vals.swap(i, k - 1);
        } else {
            vals.swap(0, k - 1);
        }
    }
}

/// A logarithmic abelian type component for 3-groups, e.g. (21) ≙ (9,3).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LogType(pub Vec<u8>);

impl fmt::Display for LogType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for LogType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let digits: Vec<u8> = s
            .trim()
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as u8).ok_or(Error::EmptyComponent))
            .collect::<Result<Vec<_>>>()?;
        if digits.is_empty() || digits.contains(&0) {
            return Err(Error::EmptyComponent);
        }
        Ok(LogType(digits))
    }
}

/// The Artin pattern AP = (ttt, tkt): positions of both refer to the same
/// frozen maximal-subgroup ordering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtinPattern {
    pub ttt: [LogType; 4],
    pub tkt: CapitulationType,
}

impl ArtinPattern {
    /// TTT as semicolon-joined text, e.g. `21;111;111;21`.
    pub fn ttt_string(&self) -> String {
        self.ttt
            .iter()
            .map(|t| t.to_string())
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Whether two patterns agree after some simultaneous position relabeling.
    pub fn equivalent(&self, other: &ArtinPattern) -> bool {
        for pi in s4_permutations() {
            if self.tkt.relabel(&pi) != other.tkt {
                continue;
            }
            let mut inv = [0usize; 5];
            for (i, &v) in pi.iter().enumerate() {
                inv[v as usize] = i;
            }
            if (1..=4).all(|i| self.ttt[inv[i]] == other.ttt[i - 1]) {
                return true;
            }
        }
        false
    }
}

/// The Artin transfer V: G/G′ → M/M′ for a finite-index subgroup M,
/// V(g) = ∏ᵢ tᵢ·g·t_{σ_g(i)}⁻¹ reduced modulo M′.
pub struct Transfer {
    transversal: Vec<Perm>,
    m: Group,
    /// M/M′ with coset lookup for reducing transfer values.
    pub target: Quotient,
}

/// A right transversal of M in G: one representative per right coset,
/// identity first, deterministic under the frozen orderings.
pub fn right_transversal(g: &Group, m: &Group) -> Result<Vec<Perm>> {
    for x in m.gens() {
        if !g.contains(x)? {
            return Err(Error::NotAMember);
        }
    }
    let m_elements = m.elements_capped(ABELIAN_ENUM_CAP, "transversal subgroup")?;
    let canon = |x: &Perm| m_elements.iter().map(|e| e.mul(x)).min().unwrap();
    let mut reps: Vec<Perm> = vec![Perm::identity(g.degree())];
    let mut seen: HashMap<Perm, usize> = HashMap::new();
    seen.insert(canon(&reps[0]), 0);
    let mut head = 0;
    while head < reps.len() {
        let r = reps[head].clone();
        head += 1;
        for s in g.gens() {
            let next = r.mul(s);
            let key = canon(&next);
            if !seen.contains_key(&key) {
                seen.insert(key, reps.len());
                reps.push(next);
            }
        }
    }
    Ok(reps)
}

impl Transfer {
    /// Builds the transfer map with a computed deterministic transversal.
    pub fn new(g: &Group, m: &Group) -> Result<Transfer> {
        let transversal = right_transversal(g, m)?;
        Transfer::with_transversal(g, m, transversal)
    }

    /// Builds the transfer map from a caller-supplied right transversal
    /// (used to test transversal independence).
    pub fn with_transversal(g: &Group, m: &Group, transversal: Vec<Perm>) -> Result<Transfer> {
        if transversal.len() as u64 != g.order() / m.order() {
            return Err(Error::Other("transversal has wrong size".into()));
        }
        let md = m.derived_subgroup();
        let target = m.quotient(&md)?;
        Ok(Transfer {
            transversal,
            m: m.clone(),
            target,
        })
    }

    /// V(g) as a coset index in M/M′ (0 is the identity coset... not
    /// necessarily; compare against `identity_coset`).
    pub fn eval(&self, g: &Perm) -> Result<usize> {
        let n = self.transversal.len();
        // coset permutation: sigma(i) = j with M t_i g = M t_j
        let mut sigma = vec![usize::MAX; n];
        for (i, t) in self.transversal.iter().enumerate() {
            let tg = t.mul(g);
            let mut found = None;
            for (j, u) in self.transversal.iter().enumerate() {
                if self.m.has(&tg.mul(&u.inv())) {
                    found = Some(j);
                    break;
                }
            }
            sigma[i] = found.ok_or(Error::NotAMember)?;
        }
        let mut prod = Perm::identity(g.degree());
        for (i, t) in self.transversal.iter().enumerate() {
            let factor = t.mul(g).mul(&self.transversal[sigma[i]].inv());
            debug_assert!(self.m.has(&factor));
            prod = prod.mul(&factor);
        }
        self.target.coset_of(&prod)
    }

    /// Coset index of the identity in M/M′.
    pub fn identity_coset(&self) -> Result<usize> {
        self.target.coset_of(&Perm::identity(self.m.degree()))
    }

    /// Kernel of the induced map G/G′ → M/M′, as the set of coset indices of
    /// `gq` (= G/G′) whose transfer value is trivial.
    pub fn kernel_in_abelianization(&self, gq: &Quotient) -> Result<BTreeSet<usize>> {
        let id = self.identity_coset()?;
        let mut kernel = BTreeSet::new();
        for i in 0..gq.size() {
            if self.eval(gq.rep(i))? == id {
                kernel.insert(i);
            }
        }
        Ok(kernel)
    }
}

/// Computes the Artin pattern of a 3-group with G/G′ ≅ (3,3): the TKT from
/// the four transfer kernels matched against the maximal-subgroup images in
/// G/G′, and the TTT from the abelianizations Mᵢ/Mᵢ′, in the same frozen
/// position order.
pub fn artin_pattern(g: &Group) -> Result<ArtinPattern> {
    let derived = g.derived_subgroup();
    let gq = g.quotient(&derived)?;
    let ab = gq.group.abelian_invariants()?;
    if ab.prime_powers != vec![3, 3] {
        return Err(Error::NotRankTwo(
            ab.prime_powers.iter().map(|&x| x as usize).collect(),
        ));
    }
    let maximals = g.maximal_subgroups()?;
    debug_assert_eq!(maximals.len(), 4);
    // image of each maximal subgroup in G/G': the 4 order-3 subgroups,
    // which exhaust the proper nontrivial subgroups of (3,3)
    let id_idx = gq.coset_of(&Perm::identity(g.degree()))?;
    let mut images: Vec<BTreeSet<usize>> = Vec::new();
    for m in &maximals {
        let mut img = BTreeSet::new();
        img.insert(id_idx);
        // close the generator images under the group law at index level
        let mut queue: Vec<usize> = m
            .gens()
            .iter()
            .map(|x| gq.coset_of(x))
            .collect::<Result<Vec<_>>>()?;
        while let Some(i) = queue.pop() {
            if img.insert(i) {
                for &j in img.clone().iter() {
                    queue.push(gq.mul_indices(i, j)?);
                }
            }
        }
        debug_assert_eq!(img.len(), 3);
        images.push(img);
    }
    let mut tkt = [0u8; 4];
    let mut ttt: Vec<LogType> = Vec::new();
    for (pos, m) in maximals.iter().enumerate() {
        let transfer = Transfer::new(g, m)?;
        let kernel = transfer.kernel_in_abelianization(&gq)?;
        tkt[pos] = match kernel.len() {
            9 => 0,
            3 => {
                let j = images
                    .iter()
                    .position(|img| *img == kernel)
                    .ok_or_else(|| Error::Other("kernel matches no maximal image".into()))?;
                (j + 1) as u8
            }
            1 => return Err(Error::Other("injective transfer (violates Hilbert 94)".into())),
            other => return Err(Error::Other(format!("kernel of size {other}"))),
        };
        let ati = transfer.target.group.abelian_invariants()?;
        ttt.push(LogType(ati.log3()?));
    }
    Ok(ArtinPattern {
        ttt: [
            ttt[0].clone(),
            ttt[1].clone(),
            ttt[2].clone(),
            ttt[3].clone(),
        ],
        tkt: CapitulationType(tkt),
    })
}

/// Stable-part check: for a pattern whose canonical TKT name is one of
/// {b.10, d.19, d.23, d.25}, both TTT components at the transposition
/// positions must be (111).
pub fn stable_part_check(ap: &ArtinPattern) -> Result<bool> {
    let (_, name) = ap.tkt.canonicalize();
    if !matches!(name, "b.10" | "d.19" | "d.23" | "d.25") {
        return Err(Error::StablePartInapplicable(ap.tkt.to_string()));
    }
    let (_, trans) = ap.tkt.features();
    Ok(trans.iter().all(|&(i, j)| {
        ap.ttt[i as usize - 1].0 == vec![1, 1, 1] && ap.ttt[j as usize - 1].0 == vec![1, 1, 1]
    }))
}

/// Parses semicolon-separated logarithmic ATI text like `21;111;111;21`.
pub fn parse_ttt(s: &str) -> Result<Vec<LogType>> {
    s.split(';').map(|c| c.parse()).collect()
}
