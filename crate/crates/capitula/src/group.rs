//! Finite-group engine over permutation representations.
//!
//! Groups carry an eagerly built stabilizer chain (Schreier–Sims with the
//! first-moved-point base heuristic); the order is the product of the
//! fundamental orbit lengths and membership is chain sifting. All public
//! results are independent of the internal base choice.

use crate::error::{Error, Result};
use crate::perm::Perm;
use std::collections::{BTreeMap, HashMap};

/// Element-enumeration cap for abelian-invariant counting (3^8).
pub const ABELIAN_ENUM_CAP: u64 = 6561;
/// Quotient-order cap for centralizer enumeration (3^6).
pub const CENTRALIZER_QUOTIENT_CAP: u64 = 729;
/// Order cap for the explicit isomorphism search.
pub const ISO_ORDER_CAP: u64 = 243;

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    gens: Vec<Perm>,
    /// orbit point b → representative r with r(point) = b
    transversal: BTreeMap<usize, Perm>,
}

impl Level {
    fn new(degree: usize, point: usize) -> Self {
        let mut transversal = BTreeMap::new();
        transversal.insert(point, Perm::identity(degree));
        Level {
            point,
            gens: Vec::new(),
            transversal,
        }
    }

    /// Rebuilds the orbit/transversal of `point` under `gens` (which must be
    /// every strong generator fixing the earlier base points, not just the
    /// ones stored at this level).
    fn recompute_orbit(&mut self, degree: usize, gens: &[Perm]) {
        self.transversal.clear();
        self.transversal.insert(self.point, Perm::identity(degree));
        let mut queue = vec![self.point];
        while let Some(b) = queue.pop() {
            let rep = self.transversal[&b].clone();
            for g in gens {
                let b2 = g.apply(b);
                if !self.transversal.contains_key(&b2) {
                    self.transversal.insert(b2, rep.mul(g));
                    queue.push(b2);
                }
            }
        }
    }
}

/// A finite permutation group, immutable after construction.
#[derive(Clone, Debug)]
pub struct Group {
    degree: usize,
    gens: Vec<Perm>,
    chain: Vec<Level>,
    order: u64,
}

impl Group {
    /// Public constructor: parses cycle strings on `{1..degree}`.
    pub fn from_cycles(degree: usize, gens: &[&str]) -> Result<Group> {
        if gens.is_empty() {
            return Err(Error::NoGenerators);
        }
        let perms = gens
            .iter()
            .map(|s| Perm::parse(degree, s))
            .collect::<Result<Vec<_>>>()?;
        Group::from_perms(degree, perms)
    }

    /// Builds a group from explicit permutations (empty list → trivial group).
    pub fn from_perms(degree: usize, gens: Vec<Perm>) -> Result<Group> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        let mut kept: Vec<Perm> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        kept.dedup();
        let chain = build_chain(degree, &kept);
        let order = chain
            .iter()
            .map(|lvl| lvl.transversal.len() as u64)
            .product();
        if kept.is_empty() {
            kept.push(Perm::identity(degree));
        }
        Ok(Group {
            degree,
            gens: kept,
            chain,
            order,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn gens(&self) -> &[Perm] {
        &self.gens
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Membership with a degree check.
    pub fn contains(&self, x: &Perm) -> Result<bool> {
        if x.degree() != self.degree {
            return Err(Error::DegreeMismatch(self.degree, x.degree()));
        }
        Ok(self.has(x))
    }

    /// Membership by sifting through the stabilizer chain (degrees must match).
    pub fn has(&self, x: &Perm) -> bool {
        let mut g = x.clone();
        for lvl in &self.chain {
            let b = g.apply(lvl.point);
            match lvl.transversal.get(&b) {
                Some(rep) => g = g.mul(&rep.inv()),
                None => return false,
            }
        }
        g.is_identity()
    }

    /// A subgroup from generators, verified to be members.
    pub fn subgroup(&self, gens: Vec<Perm>) -> Result<Group> {
        for g in &gens {
            if !self.contains(g)? {
                return Err(Error::NotAMember);
            }
        }
        Group::from_perms(self.degree, gens)
    }

    /// All elements, failing when the order exceeds `cap`.
    pub fn elements_capped(&self, cap: u64, what: &'static str) -> Result<Vec<Perm>> {
        if self.order > cap {
            return Err(Error::CapExceeded {
                what,
                size: self.order as usize,
                cap: cap as usize,
            });
        }
        let mut elems = vec![Perm::identity(self.degree)];
        for lvl in self.chain.iter().rev() {
            let mut next = Vec::with_capacity(elems.len() * lvl.transversal.len());
            for s in &elems {
                for rep in lvl.transversal.values() {
                    next.push(s.mul(rep));
                }
            }
            elems = next;
        }
        debug_assert_eq!(elems.len() as u64, self.order);
        Ok(elems)
    }

    pub fn is_abelian(&self) -> bool {
        for (i, a) in self.gens.iter().enumerate() {
            for b in &self.gens[i + 1..] {
                if !a.comm(b).is_identity() {
                    return false;
                }
            }
        }
        true
    }

    /// Whether `n` (same degree) is normalized by this group.
    pub fn normalizes(&self, n: &Group) -> bool {
        self.gens
            .iter()
            .all(|g| n.gens.iter().all(|x| n.has(&x.conj(g))))
    }

    /// Normal closure in this group of the subgroup generated by `seed`.
    pub fn normal_closure(&self, seed: &[Perm]) -> Group {
        let mut hgens: Vec<Perm> = seed.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut h = Group::from_perms(self.degree, hgens.clone()).expect("degree-checked");
        loop {
            let mut added = false;
            for x in h.gens.clone() {
                for g in &self.gens {
                    let c = x.conj(g);
                    if !h.has(&c) {
                        hgens.push(c);
                        h = Group::from_perms(self.degree, hgens.clone()).expect("degree-checked");
                        added = true;
                    }
                }
            }
            if !added {
                return h;
            }
        }
    }

    /// Derived subgroup: normal closure of all generator commutators.
    pub fn derived_subgroup(&self) -> Group {
        let mut seed = Vec::new();
        for (i, a) in self.gens.iter().enumerate() {
            for b in &self.gens[i + 1..] {
                seed.push(a.comm(b));
            }
        }
        self.normal_closure(&seed)
    }

    /// Lower central series γ₁=G, γ₂=[G,G], γᵢ=[γᵢ₋₁,G]; positional
    /// convention: index 0 holds γ₁ := G. Terminates when stable; for
    /// nilpotent input the last term is trivial.
    pub fn lower_central_series(&self) -> Vec<Group> {
        let mut series = vec![self.clone()];
        loop {
            let cur = series.last().unwrap();
            let mut seed = Vec::new();
            for x in &cur.gens {
                for g in &self.gens {
                    seed.push(x.comm(g));
                }
            }
            let next = self.normal_closure(&seed);
            if next.order == cur.order {
                break;
            }
            let done = next.is_trivial();
            series.push(next);
            if done {
                break;
            }
        }
        series
    }

    /// Nilpotency class, or None if the series does not reach the trivial group.
    pub fn nilpotency_class(&self) -> Option<u32> {
        let series = self.lower_central_series();
        if series.last().unwrap().is_trivial() {
            Some(series.len() as u32 - 1)
        } else {
            None
        }
    }

    /// log₃ of the order, or an error if the order is not a power of 3.
    pub fn log3_order(&self) -> Result<u32> {
        let mut n = self.order;
        let mut e = 0;
        while n % 3 == 0 {
            n /= 3;
            e += 1;
        }
        if n != 1 {
            return Err(Error::NotA3Group(self.order as usize));
        }
        Ok(e)
    }

    /// Quotient by a normal subgroup, as a faithful action on right cosets.
    pub fn quotient(&self, n: &Group) -> Result<Quotient> {
        for g in n.gens() {
            if !self.contains(g)? {
                return Err(Error::NotAMember);
            }
        }
        if !self.normalizes(n) {
            return Err(Error::NotNormal);
        }
        let n_elements = n.elements_capped(ABELIAN_ENUM_CAP, "quotient kernel")?;
        let canon = |g: &Perm| n_elements.iter().map(|x| x.mul(g)).min().unwrap();
        let mut reps: Vec<Perm> = Vec::new();
        let mut index_of: HashMap<Perm, usize> = HashMap::new();
        let id_rep = canon(&Perm::identity(self.degree));
        index_of.insert(id_rep.clone(), 0);
        reps.push(id_rep);
        let mut head = 0;
        while head < reps.len() {
            let r = reps[head].clone();
            head += 1;
            for g in &self.gens {
                let c = canon(&r.mul(g));
                if !index_of.contains_key(&c) {
                    index_of.insert(c.clone(), reps.len());
                    reps.push(c);
                }
            }
        }
        let m = reps.len();
        let mut qgens = Vec::new();
        for g in &self.gens {
            let mut images = vec![0; m];
            for (i, r) in reps.iter().enumerate() {
                images[i] = index_of[&canon(&r.mul(g))];
            }
            qgens.push(Perm::from_images(images)?);
        }
        let group = Group::from_perms(m, qgens)?;
        debug_assert_eq!(group.order() * n.order(), self.order);
        Ok(Quotient {
            group,
            reps,
            index_of,
            n_elements,
        })
    }

    /// Primary decomposition of an abelian group by element-order counting.
    pub fn abelian_invariants(&self) -> Result<AbelianInvariants> {
        if !self.is_abelian() {
            return Err(Error::NotAbelian);
        }
        let elems = self.elements_capped(ABELIAN_ENUM_CAP, "abelian invariant counting")?;
        let orders: Vec<u64> = elems.iter().map(|e| e.order() as u64).collect();
        let mut primes: Vec<u64> = Vec::new();
        let mut n = self.order;
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                primes.push(d);
                while n % d == 0 {
                    n /= d;
                }
            }
            d += 1;
        }
        if n > 1 {
            primes.push(n);
        }
        let mut prime_powers: Vec<u64> = Vec::new();
        for &p in &primes {
            // c_k = #{x : ord(x) | p^k}; d_k = log_p(c_k) - log_p(c_{k-1})
            // counts the cyclic factors of exponent ≥ k.
            let mut dks: Vec<u32> = Vec::new();
            let mut prev = 1u64;
            let mut pk = p;
            loop {
                let ck = orders.iter().filter(|&&o| pk % o == 0).count() as u64;
                let mut ratio = ck / prev;
                let mut dk = 0;
                while ratio > 1 {
                    ratio /= p;
                    dk += 1;
                }
                if dk == 0 {
                    break;
                }
                dks.push(dk);
                prev = ck;
                pk *= p;
            }
            // conjugate partition: factor j has exponent #{k : d_k ≥ j}
            if let Some(&d1) = dks.first() {
                for j in 1..=d1 {
                    let e = dks.iter().filter(|&&dk| dk >= j).count() as u32;
                    prime_powers.push(p.pow(e));
                }
            }
        }
        prime_powers.sort_unstable_by(|a, b| b.cmp(a));
        let product: u64 = prime_powers.iter().product();
        debug_assert_eq!(product, self.order);
        Ok(AbelianInvariants { prime_powers })
    }

    /// Frattini subgroup of a 3-group: normal closure of commutators and cubes.
    pub fn frattini_subgroup(&self) -> Result<Group> {
        self.log3_order()?;
        let mut seed = Vec::new();
        for (i, a) in self.gens.iter().enumerate() {
            for b in &self.gens[i + 1..] {
                seed.push(a.comm(b));
            }
            seed.push(a.mul(a).mul(a));
        }
        Ok(self.normal_closure(&seed))
    }

    /// The index-3 subgroups of a 3-group, in the frozen hyperplane order:
    /// hyperplanes of the Frattini quotient sorted by the lexicographic rank
    /// of their normalized normal vectors (first nonzero coordinate = 1) with
    /// respect to the generator-induced basis.
    pub fn maximal_subgroups(&self) -> Result<Vec<Group>> {
        let fd = self.frattini_data()?;
        let r = fd.rank();
        let mut out = Vec::new();
        for nv in normalized_vectors(r) {
            let mut gens: Vec<Perm> = fd.phi.gens.clone();
            for (idx, coords) in &fd.coords {
                let dot: u32 = coords
                    .iter()
                    .zip(&nv)
                    .map(|(&c, &f)| c as u32 * f as u32)
                    .sum();
                if dot % 3 == 0 && *idx != fd.id_idx {
                    gens.push(fd.quotient.rep(*idx).clone());
                }
            }
            let m = Group::from_perms(self.degree, gens)?;
            debug_assert_eq!(m.order() * 3, self.order);
            out.push(m);
        }
        Ok(out)
    }

    /// Frattini quotient with GF(3) coordinates keyed by coset index, plus
    /// a minimal generating set of G drawn from its generator list.
    pub(crate) fn frattini_data(&self) -> Result<FrattiniData> {
        let phi = self.frattini_subgroup()?;
        let quotient = self.quotient(&phi)?;
        let id_idx = quotient.coset_of(&Perm::identity(self.degree))?;
        let mut coords: HashMap<usize, Vec<u8>> = HashMap::new();
        coords.insert(id_idx, Vec::new());
        let mut basis_gens: Vec<Perm> = Vec::new();
        for g in &self.gens {
            let gi = quotient.coset_of(g)?;
            if coords.contains_key(&gi) {
                continue;
            }
            basis_gens.push(g.clone());
            for v in coords.values_mut() {
                v.push(0);
            }
            let t = basis_gens.len();
            let snapshot: Vec<(usize, Vec<u8>)> =
                coords.iter().map(|(k, v)| (*k, v.clone())).collect();
            for (idx, v) in snapshot {
                let mut cur = idx;
                for e in 1u8..=2 {
                    cur = quotient.mul_indices(cur, gi)?;
                    let mut nv = v.clone();
                    nv[t - 1] = e;
                    coords.insert(cur, nv);
                }
            }
        }
        if coords.len() != quotient.size() {
            return Err(Error::Other(
                "generators do not span the Frattini quotient".into(),
            ));
        }
        Ok(FrattiniData {
            phi,
            quotient,
            coords,
            id_idx,
            basis_gens,
        })
    }

    /// Full preimage in G of the centralizer of S/N in G/N.
    pub fn centralizer_in_quotient(&self, n: &Group, s: &Group) -> Result<Group> {
        for g in n.gens() {
            if !s.contains(g)? {
                return Err(Error::NotAMember);
            }
        }
        let q = self.quotient(n)?;
        if q.group.order() > CENTRALIZER_QUOTIENT_CAP {
            return Err(Error::CapExceeded {
                what: "centralizer quotient",
                size: q.group.order() as usize,
                cap: CENTRALIZER_QUOTIENT_CAP as usize,
            });
        }
        let sq: Vec<Perm> = s
            .gens()
            .iter()
            .map(|x| q.project(x))
            .collect::<Result<Vec<_>>>()?;
        let id_idx = q.coset_of(&Perm::identity(self.degree))?;
        let qelems = q
            .group
            .elements_capped(CENTRALIZER_QUOTIENT_CAP, "centralizer enumeration")?;
        let mut gens: Vec<Perm> = n.gens().to_vec();
        let mut cur = Group::from_perms(self.degree, gens.clone())?;
        for e in &qelems {
            if sq.iter().all(|x| e.comm(x).is_identity()) {
                let rep = q.rep(e.apply(id_idx)).clone();
                if !cur.has(&rep) {
                    gens.push(rep);
                    cur = Group::from_perms(self.degree, gens.clone())?;
                }
            }
        }
        Ok(cur)
    }
}

pub(crate) struct FrattiniData {
    pub phi: Group,
    pub quotient: Quotient,
    pub coords: HashMap<usize, Vec<u8>>,
    pub id_idx: usize,
    pub basis_gens: Vec<Perm>,
}

impl FrattiniData {
    pub fn rank(&self) -> usize {
        self.basis_gens.len()
    }
}

/// All nonzero GF(3)^r vectors normalized so the first nonzero entry is 1,
/// in lexicographic order. These index the hyperplanes (as normal vectors).
fn normalized_vectors(r: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut v = vec![0u8; r];
    loop {
        if let Some(first) = v.iter().find(|&&x| x != 0) {
            if *first == 1 {
                out.push(v.clone());
            }
        }
        // lexicographic increment
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if v[i] < 2 {
                v[i] += 1;
                for x in &mut v[i + 1..] {
                    *x = 0;
                }
                break;
            }
        }
    }
}

/// Builds a base and strong generating set by placing each generator at its
/// sift depth and then closing all Schreier generators to a fixpoint. Each
/// level's orbit is computed under every strong generator stored at that
/// level or deeper (those are exactly the strong generators fixing the
/// earlier base points).
fn build_chain(degree: usize, gens: &[Perm]) -> Vec<Level> {
    let mut levels: Vec<Level> = Vec::new();
    for g in gens {
        place(&mut levels, degree, g.clone(), 0);
    }
    loop {
        refresh_orbits(&mut levels, degree);
        let mut added = false;
        'levels: for j in 0..levels.len() {
            let pt = levels[j].point;
            let transversal: Vec<Perm> = levels[j].transversal.values().cloned().collect();
            let gens_j = strong_gens_from(&levels, j);
            for rep in &transversal {
                for s in &gens_j {
                    let rs = rep.mul(s);
                    let tgt = levels[j].transversal[&rs.apply(pt)].clone();
                    let schreier = rs.mul(&tgt.inv());
                    if place(&mut levels, degree, schreier, j + 1) {
                        added = true;
                        // transversals are stale now; recompute and restart
                        break 'levels;
                    }
                }
            }
        }
        if !added {
            return levels;
        }
    }
}

/// All strong generators fixing the base points before level `j`.
fn strong_gens_from(levels: &[Level], j: usize) -> Vec<Perm> {
    levels[j..].iter().flat_map(|l| l.gens.iter().cloned()).collect()
}

fn refresh_orbits(levels: &mut Vec<Level>, degree: usize) {
    for j in 0..levels.len() {
        let gens = strong_gens_from(levels, j);
        levels[j].recompute_orbit(degree, &gens);
    }
}

/// Sifts `g` through the chain from level `start` and stores the residue at
/// the level where sifting fails (opening a new level if it sifts through
/// every existing one). Returns whether a new strong generator was stored.
fn place(levels: &mut Vec<Level>, degree: usize, g: Perm, start: usize) -> bool {
    if g.is_identity() {
        return false;
    }
    let mut h = g;
    let mut j = start;
    while j < levels.len() {
        let b = h.apply(levels[j].point);
        match levels[j].transversal.get(&b) {
            Some(rep) => {
                h = h.mul(&rep.inv());
                if h.is_identity() {
                    return false;
                }
                j += 1;
            }
            None => break,
        }
    }
    if j == levels.len() {
        let point = (0..degree).find(|&p| h.apply(p) != p).expect("non-identity");
        levels.push(Level::new(degree, point));
    }
    if levels[j].gens.contains(&h) {
        return false;
    }
    levels[j].gens.push(h);
    let gens = strong_gens_from(levels, j);
    levels[j].recompute_orbit(degree, &gens);
    true
}

/// Brute-force closure enumeration (oracle for tests), capped.
pub fn brute_force_elements(degree: usize, gens: &[Perm], cap: usize) -> Result<Vec<Perm>> {
    let mut seen: HashMap<Perm, ()> = HashMap::new();
    let mut queue = vec![Perm::identity(degree)];
    seen.insert(Perm::identity(degree), ());
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = x.mul(g);
            if !seen.contains_key(&y) {
                if seen.len() >= cap {
                    return Err(Error::CapExceeded {
                        what: "brute-force closure",
                        size: seen.len() + 1,
                        cap,
                    });
                }
                seen.insert(y.clone(), ());
                queue.push(y);
            }
        }
    }
    let mut out: Vec<Perm> = seen.into_keys().collect();
    out.sort();
    Ok(out)
}

/// A quotient G/N realized as a faithful permutation group on right cosets,
/// with canonical coset representatives for preimage lookups.
pub struct Quotient {
    /// The quotient as a permutation group on coset indices.
    pub group: Group,
    reps: Vec<Perm>,
    index_of: HashMap<Perm, usize>,
    n_elements: Vec<Perm>,
}

impl Quotient {
    fn canon(&self, g: &Perm) -> Perm {
        self.n_elements.iter().map(|x| x.mul(g)).min().unwrap()
    }

    pub fn size(&self) -> usize {
        self.reps.len()
    }

    /// Coset index of a parent element.
    pub fn coset_of(&self, g: &Perm) -> Result<usize> {
        self.index_of
            .get(&self.canon(g))
            .copied()
            .ok_or(Error::NotAMember)
    }

    /// Canonical representative (in the parent) of coset `i`.
    pub fn rep(&self, i: usize) -> &Perm {
        &self.reps[i]
    }

    /// Image of a parent element as a permutation of the cosets.
    pub fn project(&self, g: &Perm) -> Result<Perm> {
        let mut images = vec![0; self.reps.len()];
        for (i, r) in self.reps.iter().enumerate() {
            images[i] = self.coset_of(&r.mul(g))?;
        }
        Perm::from_images(images)
    }

    /// Coset index of `rep(i) * rep(j)`.
    pub fn mul_indices(&self, i: usize, j: usize) -> Result<usize> {
        self.coset_of(&self.reps[i].mul(&self.reps[j]))
    }
}

/// Primary decomposition of a finite abelian group.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AbelianInvariants {
    /// Prime powers, sorted descending; product = group order.
    pub prime_powers: Vec<u64>,
}

impl AbelianInvariants {
    /// Logarithmic form for 3-groups: 3-exponents sorted descending,
    /// e.g. 9×3 → [2,1] (written "21").
    pub fn log3(&self) -> Result<Vec<u8>> {
        let mut out = Vec::new();
        for &pp in &self.prime_powers {
            let mut n = pp;
            let mut e = 0u8;
            while n % 3 == 0 {
                n /= 3;
                e += 1;
            }
            if n != 1 {
                return Err(Error::NotA3Group(pp as usize));
            }
            out.push(e);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        Ok(out)
    }
}

/// Structural fingerprint used to pre-filter (and, above the explicit cap,
/// replace) isomorphism testing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub order: u64,
    pub lcs_orders: Vec<u64>,
    pub order_histogram: BTreeMap<usize, usize>,
    pub abelianization: Vec<u64>,
    pub maximal_ati_multiset: Option<Vec<Vec<u64>>>,
}

/// Computes the fingerprint; element enumeration capped at 3^8.
pub fn fingerprint(g: &Group) -> Result<Fingerprint> {
    let elems = g.elements_capped(ABELIAN_ENUM_CAP, "fingerprint enumeration")?;
    let mut order_histogram = BTreeMap::new();
    for e in &elems {
        *order_histogram.entry(e.order()).or_insert(0) += 1;
    }
    let lcs_orders = g.lower_central_series().iter().map(|s| s.order()).collect();
    let derived = g.derived_subgroup();
    let ab = g.quotient(&derived)?.group.abelian_invariants()?;
    let maximal_ati_multiset = if g.log3_order().is_ok() && g.order() > 1 {
        let mut m: Vec<Vec<u64>> = Vec::new();
        for sub in g.maximal_subgroups()? {
            let sd = sub.derived_subgroup();
            m.push(sub.quotient(&sd)?.group.abelian_invariants()?.prime_powers);
        }
        m.sort();
        Some(m)
    } else {
        None
    };
    Ok(Fingerprint {
        order: g.order(),
        lcs_orders,
        order_histogram,
        abelianization: ab.prime_powers,
        maximal_ati_multiset,
    })
}

/// Explicit isomorphism test for orders ≤ 243: fingerprint filter, then
/// bounded backtracking over generator images.
pub fn is_isomorphic_small(g: &Group, h: &Group) -> Result<bool> {
    if g.order() != h.order() {
        return Ok(false);
    }
    if g.order() > ISO_ORDER_CAP {
        return Err(Error::IsoAboveCap(ISO_ORDER_CAP as usize));
    }
    if fingerprint(g)? != fingerprint(h)? {
        return Ok(false);
    }
    if g.order() == 1 {
        return Ok(true);
    }
    let sgens = minimal_generators(g)?;
    let helems = h.elements_capped(ISO_ORDER_CAP, "isomorphism search")?;
    // BFS word tree over G: each element as (parent index, generator index).
    let gelems_tree = bfs_tree(g, &sgens)?;
    let gindex: HashMap<&Perm, usize> = gelems_tree
        .iter()
        .enumerate()
        .map(|(i, (p, _))| (p, i))
        .collect();
    let sorders: Vec<usize> = sgens.iter().map(|s| s.order()).collect();
    let mut candidates: Vec<Vec<&Perm>> = Vec::new();
    for &o in &sorders {
        candidates.push(helems.iter().filter(|e| e.order() == o).collect());
    }
    let mut choice = vec![0usize; sgens.len()];
    'outer: loop {
        let images: Vec<&Perm> = choice
            .iter()
            .zip(&candidates)
            .map(|(&c, cand)| cand[c])
            .collect();
        if check_candidate(g, &sgens, &images, &gelems_tree, &gindex) {
            return Ok(true);
        }
        // advance the choice vector
        let mut i = sgens.len();
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                break;
            }
            choice[i] = 0;
        }
    }
    Ok(false)
}

/// A minimal generating sequence: Frattini-basis generators for 3-groups,
/// greedy reduction otherwise.
fn minimal_generators(g: &Group) -> Result<Vec<Perm>> {
    if g.log3_order().is_ok() {
        return Ok(g.frattini_data()?.basis_gens);
    }
    let mut kept: Vec<Perm> = Vec::new();
    let mut cur = Group::from_perms(g.degree(), Vec::new())?;
    for x in g.gens() {
        if !cur.has(x) {
            kept.push(x.clone());
            cur = Group::from_perms(g.degree(), kept.clone())?;
        }
    }
    Ok(kept)
}

/// Elements of G in BFS order over `sgens`, as (element, (parent, gen)) with
/// the identity first.
fn bfs_tree(g: &Group, sgens: &[Perm]) -> Result<Vec<(Perm, Option<(usize, usize)>)>> {
    let mut out: Vec<(Perm, Option<(usize, usize)>)> = vec![(Perm::identity(g.degree()), None)];
    let mut seen: HashMap<Perm, ()> = HashMap::new();
    seen.insert(out[0].0.clone(), ());
    let mut head = 0;
    while head < out.len() {
        let x = out[head].0.clone();
        for (gi, s) in sgens.iter().enumerate() {
            let y = x.mul(s);
            if !seen.contains_key(&y) {
                seen.insert(y.clone(), ());
                out.push((y, Some((head, gi))));
            }
        }
        head += 1;
    }
    if out.len() as u64 != g.order() {
        return Err(Error::Other("generators do not generate".into()));
    }
    Ok(out)
}

fn check_candidate(
    _g: &Group,
    sgens: &[Perm],
    images: &[&Perm],
    tree: &[(Perm, Option<(usize, usize)>)],
    gindex: &HashMap<&Perm, usize>,
) -> bool {
    let hdeg = images[0].degree();
    // cheap relation filters before the full word check
    for (i, s) in sgens.iter().enumerate() {
        for (j, t) in sgens.iter().enumerate() {
            if j <= i {
                continue;
            }
            if s.mul(t).order() != images[i].mul(images[j]).order() {
                return false;
            }
            if s.comm(t).order() != images[i].comm(images[j]).order() {
                return false;
            }
        }
    }
    // evaluate the word map along the BFS tree
    let mut img: Vec<Perm> = Vec::with_capacity(tree.len());
    img.push(Perm::identity(hdeg));
    for (_, parent) in tree.iter().skip(1) {
        let (p, gi) = parent.unwrap();
        img.push(img[p].mul(images[gi]));
    }
    // bijectivity onto H
    let mut distinct: HashMap<&Perm, ()> = HashMap::new();
    for e in &img {
        if distinct.insert(e, ()).is_some() {
            return false;
        }
    }
    // homomorphism: map(x·s) = map(x)·map(s) for every element x and gen s
    for (i, (x, _)) in tree.iter().enumerate() {
        for (gi, s) in sgens.iter().enumerate() {
            let k = gindex[&x.mul(s)];
            if img[i].mul(images[gi]) != img[k] {
                return false;
            }
        }
    }
    true
}
