//! Embedded datasets — the group catalog and the seven conductor tables —
//! plus the cross-validation harness tying the group theory to the field
//! data.

use crate::artin::{artin_pattern, parse_ttt, stable_part_check, ArtinPattern, CapitulationType, LogType};
use crate::cubic::{
    admissible_capitulation_types, aux_type_of_prime, cubic_residue_symbol, multiplicity,
    normalize_radicand, AuxType, CubicSymbol, Species, GAMMA_PRIMES,
};
use crate::error::{Error, Result};
use crate::group::{Group, ABELIAN_ENUM_CAP};
use crate::perm::Perm;
use crate::tower::{huppert_check, shafarevich_interval, structure_report, HuppertVerdict, ShafarevichInput};
use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

/// The embedded table files with their transcription checksums (FNV-1a 64).
pub const EMBEDDED_TABLES: [(&str, &str, u64); 7] = [
    ("pqq22.tsv", include_str!("../data/tables/pqq22.tsv"), 0xd2bab16a6427de9e),
    ("pqq55.tsv", include_str!("../data/tables/pqq55.tsv"), 0x3539be564b878666),
    ("pqq25.tsv", include_str!("../data/tables/pqq25.tsv"), 0x1cfae89f0a258e5a),
    ("3pq2.tsv", include_str!("../data/tables/3pq2.tsv"), 0xe033243df76ad83e),
    ("3pq5.tsv", include_str!("../data/tables/3pq5.tsv"), 0x4d545ba1bea9e031),
    ("9pq2.tsv", include_str!("../data/tables/9pq2.tsv"), 0x2246e33caf2b14f9),
    ("9pq5.tsv", include_str!("../data/tables/9pq5.tsv"), 0x283d9170628b34f3),
];

/// The embedded group catalog files.
pub const EMBEDDED_CATALOG: [(&str, &str); 9] = [
    ("9-2.grp", include_str!("../data/catalog/9-2.grp")),
    ("27-5.grp", include_str!("../data/catalog/27-5.grp")),
    ("54-13.grp", include_str!("../data/catalog/54-13.grp")),
    ("81-7.grp", include_str!("../data/catalog/81-7.grp")),
    ("81-9.grp", include_str!("../data/catalog/81-9.grp")),
    ("243-3.grp", include_str!("../data/catalog/243-3.grp")),
    ("mc243.grp", include_str!("../data/catalog/mc243.grp")),
    ("2187-387.grp", include_str!("../data/catalog/2187-387.grp")),
    ("6561-1990.grp", include_str!("../data/catalog/6561-1990.grp")),
];

/// FNV-1a 64-bit hash, used as the transcription checksum.
pub fn fnv1a64(data: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in data {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Verifies the embedded tables against their transcription checksums.
pub fn table_checksums_ok() -> bool {
    EMBEDDED_TABLES
        .iter()
        .all(|(_, content, sum)| fnv1a64(content.as_bytes()) == *sum)
}

/// One row of a conductor table.
#[derive(Clone, Debug)]
pub struct FixtureRow {
    pub table_id: String,
    pub p: u64,
    pub q1: u64,
    pub q2: Option<u64>,
    pub f: u64,
    pub n: u64,
    pub factorization: String,
    pub ct_name: String,
    pub kappa: CapitulationType,
    pub alpha: Vec<LogType>,
    pub dpf: u64,
    pub aux: AuxType,
    pub file: String,
    pub line: usize,
}

impl FixtureRow {
    /// Species implied by the table section.
    pub fn section_species(&self) -> Species {
        match self.table_id.as_str() {
            t if t.starts_with("pqq") => Species::II,
            t if t.starts_with("3pq") => Species::IB,
            _ => Species::IA,
        }
    }

    /// Expected residue classes mod 9 of the q-primes in this table.
    pub fn q_congruences(&self) -> Vec<u64> {
        match self.table_id.as_str() {
            "pqq22" => vec![2, 2],
            "pqq55" => vec![5, 5],
            "pqq25" => vec![2, 5],
            "3pq2" | "9pq2" => vec![2],
            _ => vec![5],
        }
    }

    /// Expected multiplicity for this table's conductors.
    pub fn expected_multiplicity(&self) -> usize {
        if self.table_id.starts_with("9pq") {
            4
        } else {
            2
        }
    }
}

fn parse_err(file: &str, line: usize, msg: impl Into<String>) -> Error {
    Error::FixtureParse {
        file: file.to_string(),
        line,
        msg: msg.into(),
    }
}

fn parse_table(file: &str, content: &str) -> Result<Vec<FixtureRow>> {
    let mut out = Vec::new();
    for (lineno, line) in content.lines().enumerate() {
        let line = line.trim_end();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols[0] == "table" {
            continue;
        }
        if cols.len() != 12 {
            return Err(parse_err(file, lineno + 1, format!("expected 12 columns, got {}", cols.len())));
        }
        let num = |s: &str, what: &str| -> Result<u64> {
            s.parse()
                .map_err(|_| parse_err(file, lineno + 1, format!("bad {what}: {s:?}")))
        };
        let aux = match cols[11] {
            "alpha" => AuxType::Alpha,
            "gamma" => AuxType::Gamma,
            other => return Err(parse_err(file, lineno + 1, format!("bad aux type {other:?}"))),
        };
        out.push(FixtureRow {
            table_id: cols[0].to_string(),
            p: num(cols[1], "p")?,
            q1: num(cols[2], "q1")?,
            q2: if cols[3] == "-" { None } else { Some(num(cols[3], "q2")?) },
            f: num(cols[4], "f")?,
            n: num(cols[5], "n")?,
            factorization: cols[6].to_string(),
            ct_name: cols[7].to_string(),
            kappa: cols[8]
                .parse()
                .map_err(|_| parse_err(file, lineno + 1, format!("bad kappa {:?}", cols[8])))?,
            alpha: parse_ttt(cols[9])
                .map_err(|_| parse_err(file, lineno + 1, format!("bad alpha {:?}", cols[9])))?,
            dpf: num(cols[10], "dpf")?,
            aux,
            file: file.to_string(),
            line: lineno + 1,
        });
    }
    if out.is_empty() {
        return Err(parse_err(file, 0, "no rows"));
    }
    Ok(out)
}

/// Loads all table rows, from `dir` when given, otherwise from the embedded
/// copies (whose checksums are verified).
pub fn load_tables(dir: Option<&Path>) -> Result<Vec<FixtureRow>> {
    let mut rows = Vec::new();
    match dir {
        Some(dir) => {
            for (file, _, _) in EMBEDDED_TABLES {
                let path = dir.join(file);
                let content = std::fs::read_to_string(&path)
                    .map_err(|e| parse_err(&path.display().to_string(), 0, e.to_string()))?;
                rows.extend(parse_table(file, &content)?);
            }
        }
        None => {
            if !table_checksums_ok() {
                return Err(Error::Other("embedded table checksum mismatch".into()));
            }
            for (file, content, _) in EMBEDDED_TABLES {
                rows.extend(parse_table(file, content)?);
            }
        }
    }
    Ok(rows)
}

/// Outcome of a single validation check.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

/// Runs every per-row consistency check of the harness.
pub fn validate_row(r: &FixtureRow) -> Vec<Check> {
    let mut out = Vec::new();
    let loc = format!("{}:{}", r.file, r.line);
    // prime congruences
    out.push(Check::new(
        "prime-congruences",
        r.p % 9 == 1 && {
            let qs: Vec<u64> = std::iter::once(r.q1).chain(r.q2).collect();
            qs.iter()
                .zip(r.q_congruences())
                .all(|(&q, want)| q % 9 == want)
        },
        format!("{loc}: p={} q1={} q2={:?}", r.p, r.q1, r.q2),
    ));
    // factorization string multiplies to n
    let product = r
        .factorization
        .split('*')
        .map(|term| {
            if let Some((b, e)) = term.split_once('^') {
                Ok(b.parse::<u64>()
                    .map_err(|_| ())?
                    .pow(e.parse::<u32>().map_err(|_| ())?))
            } else {
                term.parse::<u64>().map_err(|_| ())
            }
        })
        .try_fold(1u64, |acc, t| t.map(|t| acc * t));
    out.push(Check::new(
        "factorization",
        product == Ok(r.n),
        format!("{loc}: {} vs n={}", r.factorization, r.n),
    ));
    // normalization, conductor, species
    match normalize_radicand(r.n) {
        Ok(profile) => {
            out.push(Check::new(
                "normalized",
                profile.input_was_normalized,
                format!("{loc}: n={} normalizes to {}", r.n, profile.n),
            ));
            out.push(Check::new(
                "conductor",
                profile.conductor == r.f,
                format!("{loc}: computed f={} table f={}", profile.conductor, r.f),
            ));
            out.push(Check::new(
                "species",
                profile.species == r.section_species(),
                format!("{loc}: computed {} section {}", profile.species, r.section_species()),
            ));
        }
        Err(e) => out.push(Check::new("normalized", false, format!("{loc}: {e}"))),
    }
    // multiplicity membership
    match multiplicity(r.f) {
        Ok((_, reps)) => out.push(Check::new(
            "multiplicity-membership",
            reps.contains(&r.n),
            format!("{loc}: n={} in m({})={reps:?}", r.n, r.f),
        )),
        Err(e) => out.push(Check::new("multiplicity-membership", false, format!("{loc}: {e}"))),
    }
    // CT name from the raw kappa
    let (canon, name) = r.kappa.canonicalize();
    out.push(Check::new(
        "ct-name",
        name == r.ct_name,
        format!("{loc}: canon({})={} named {}, table {}", r.kappa, canon, name, r.ct_name),
    ));
    // feature counts per named type
    let (fixed, trans) = r.kappa.features();
    let features_ok = match r.ct_name.as_str() {
        "b.10" => fixed.is_empty() && trans.len() == 1,
        "d.23" => fixed.len() == 1 && trans.len() == 1,
        _ => true,
    };
    out.push(Check::new(
        "tkt-features",
        features_ok,
        format!("{loc}: fixed={fixed:?} transpositions={trans:?}"),
    ));
    // stable part of the Artin pattern
    if r.alpha.len() == 4 {
        let ap = ArtinPattern {
            ttt: [
                r.alpha[0].clone(),
                r.alpha[1].clone(),
                r.alpha[2].clone(),
                r.alpha[3].clone(),
            ],
            tkt: r.kappa,
        };
        match stable_part_check(&ap) {
            Ok(pass) => out.push(Check::new("stable-part", pass, format!("{loc}: alpha={}", ap.ttt_string()))),
            Err(e) => out.push(Check::new("stable-part", false, format!("{loc}: {e}"))),
        }
    } else {
        out.push(Check::new("stable-part", false, format!("{loc}: alpha has {} components", r.alpha.len())));
    }
    // DPF cubic residue mod p (skipped when p | dpf)
    if r.dpf % r.p == 0 {
        out.push(Check::new(
            "dpf-residue",
            true,
            format!("{loc}: skipped, p={} divides dpf={}", r.p, r.dpf),
        ));
    } else {
        match cubic_residue_symbol(r.dpf, r.p) {
            Ok(sym) => out.push(Check::new(
                "dpf-residue",
                sym == CubicSymbol::Residue,
                format!("{loc}: ({} / {}) = {:?}", r.dpf, r.p, sym),
            )),
            Err(e) => out.push(Check::new("dpf-residue", false, format!("{loc}: {e}"))),
        }
    }
    // aux type vs admissible capitulation types
    let admissible_ok = match r.ct_name.as_str() {
        "d.23" => r.aux == AuxType::Gamma && GAMMA_PRIMES.contains(&r.p),
        "b.10" => {
            // b.10 is admissible at unit norm index 1 for both aux types
            admissible_capitulation_types(r.aux, 1)
                .map(|set| set.contains(&"b.10"))
                .unwrap_or(false)
        }
        _ => true,
    };
    out.push(Check::new(
        "aux-admissible",
        admissible_ok,
        format!("{loc}: ct={} aux={:?} p={}", r.ct_name, r.aux, r.p),
    ));
    out.push(Check::new(
        "aux-matches-prime",
        r.aux == aux_type_of_prime(r.p),
        format!("{loc}: aux={:?} p={}", r.aux, r.p),
    ));
    out
}

/// Table-level checks: per conductor, the enumerated multiplicity and
/// radicand set must match the printed rows (f=3582 documented exception:
/// multiplicity 4 with only 2 rows printed).
pub fn validate_tables(rows: &[FixtureRow]) -> Vec<Check> {
    let mut by_f: BTreeMap<(String, u64), Vec<u64>> = BTreeMap::new();
    let mut expected_m: BTreeMap<(String, u64), usize> = BTreeMap::new();
    for r in rows {
        by_f.entry((r.table_id.clone(), r.f)).or_default().push(r.n);
        expected_m.insert((r.table_id.clone(), r.f), r.expected_multiplicity());
    }
    let mut out = Vec::new();
    for ((table, f), mut ns) in by_f {
        ns.sort_unstable();
        let want_m = expected_m[&(table.clone(), f)];
        match multiplicity(f) {
            Ok((m, reps)) => {
                if f == 3582 {
                    out.push(Check::new(
                        "multiplicity-exception-3582",
                        m == 4 && ns.len() == 2 && ns.iter().all(|n| reps.contains(n)),
                        format!("{table} f={f}: m={m}, printed rows {ns:?} of {reps:?}"),
                    ));
                } else {
                    out.push(Check::new(
                        "multiplicity-set",
                        m == want_m && ns == reps,
                        format!("{table} f={f}: m={m} (want {want_m}), rows {ns:?} enum {reps:?}"),
                    ));
                }
            }
            Err(e) => out.push(Check::new("multiplicity-set", false, format!("{table} f={f}: {e}"))),
        }
    }
    out
}

/// One named group with its expected fingerprints.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub degree: usize,
    pub gens: Vec<String>,
    pub expect: BTreeMap<String, String>,
}

impl CatalogEntry {
    /// Builds the permutation group from the stored representation.
    pub fn group(&self) -> Result<Group> {
        let gens: Vec<&str> = self.gens.iter().map(|s| s.as_str()).collect();
        Group::from_cycles(self.degree, &gens)
    }
}

/// Strips a comment: '#' starts one only at line start or after whitespace,
/// so group names like `243#3` survive.
fn strip_comment(line: &str) -> &str {
    let bytes = line.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if b == b'#' && (i == 0 || bytes[i - 1].is_ascii_whitespace()) {
            return &line[..i];
        }
    }
    line
}

fn parse_catalog_file(file: &str, content: &str) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    let mut cur: Option<CatalogEntry> = None;
    for (lineno, raw) in content.lines().enumerate() {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match key {
            "group" => {
                if cur.is_some() {
                    return Err(parse_err(file, lineno + 1, "nested group"));
                }
                cur = Some(CatalogEntry {
                    name: rest.to_string(),
                    degree: 0,
                    gens: Vec::new(),
                    expect: BTreeMap::new(),
                });
            }
            "degree" => {
                let e = cur.as_mut().ok_or_else(|| parse_err(file, lineno + 1, "degree outside group"))?;
                e.degree = rest
                    .parse()
                    .map_err(|_| parse_err(file, lineno + 1, format!("bad degree {rest:?}")))?;
            }
            "gen" => {
                let e = cur.as_mut().ok_or_else(|| parse_err(file, lineno + 1, "gen outside group"))?;
                e.gens.push(rest.to_string());
            }
            "expect" => {
                let e = cur.as_mut().ok_or_else(|| parse_err(file, lineno + 1, "expect outside group"))?;
                let (k, v) = rest
                    .split_once('=')
                    .ok_or_else(|| parse_err(file, lineno + 1, "expect needs key=value"))?;
                e.expect.insert(k.trim().to_string(), v.trim().to_string());
            }
            "end" => {
                let e = cur.take().ok_or_else(|| parse_err(file, lineno + 1, "end outside group"))?;
                if e.degree == 0 || e.gens.is_empty() {
                    return Err(parse_err(file, lineno + 1, "group missing degree or generators"));
                }
                out.push(e);
            }
            other => return Err(parse_err(file, lineno + 1, format!("unknown keyword {other:?}"))),
        }
    }
    if cur.is_some() {
        return Err(parse_err(file, 0, "unterminated group"));
    }
    Ok(out)
}

/// Loads the group catalog, from `dir` when given, otherwise embedded.
pub fn load_catalog(dir: Option<&Path>) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    match dir {
        Some(dir) => {
            let mut files: Vec<_> = std::fs::read_dir(dir)
                .map_err(|e| parse_err(&dir.display().to_string(), 0, e.to_string()))?
                .filter_map(|f| f.ok())
                .map(|f| f.path())
                .filter(|p| p.extension().is_some_and(|e| e == "grp"))
                .collect();
            files.sort();
            for path in files {
                let content = std::fs::read_to_string(&path)
                    .map_err(|e| parse_err(&path.display().to_string(), 0, e.to_string()))?;
                out.extend(parse_catalog_file(&path.display().to_string(), &content)?);
            }
        }
        None => {
            for (file, content) in EMBEDDED_CATALOG {
                out.extend(parse_catalog_file(file, content)?);
            }
        }
    }
    Ok(out)
}

/// Loads every group entry from a single catalog file on disk.
pub fn load_catalog_file(path: &Path) -> Result<Vec<CatalogEntry>> {
    let content = std::fs::read_to_string(path)
        .map_err(|e| parse_err(&path.display().to_string(), 0, e.to_string()))?;
    parse_catalog_file(&path.display().to_string(), &content)
}

/// Finds a catalog entry by name.
pub fn find_entry<'a>(entries: &'a [CatalogEntry], name: &str) -> Result<&'a CatalogEntry> {
    entries
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::NoSuchGroup(name.to_string()))
}

/// The Shafarevich setting of the source computations: 3-class rank 2,
/// totally complex degree-6 normal closure (r1=0, r2=3), cube roots of
/// unity present.
pub const D2_INTERVAL_INPUT: ShafarevichInput = ShafarevichInput {
    rho: 2,
    r1: 0,
    r2: 3,
    theta: 1,
    claimed_d2: None,
};

/// Recomputes every verifiable expectation of a catalog entry.
pub fn verify_entry(entry: &CatalogEntry) -> Vec<Check> {
    let mut out = Vec::new();
    let name = &entry.name;
    let g = match entry.group() {
        Ok(g) => g,
        Err(e) => {
            out.push(Check::new("representation", false, format!("{name}: {e}")));
            return out;
        }
    };
    if let Some(want) = entry.expect.get("order") {
        out.push(Check::new(
            "order",
            want.parse() == Ok(g.order()),
            format!("{name}: computed {} expected {want}", g.order()),
        ));
    }
    let is_3group = g.log3_order().is_ok();
    if is_3group {
        match structure_report(&g) {
            Ok(report) => {
                if let Some(want) = entry.expect.get("class") {
                    out.push(Check::new(
                        "class",
                        want.parse() == Ok(report.class),
                        format!("{name}: computed {} expected {want}", report.class),
                    ));
                }
                if let Some(want) = entry.expect.get("coclass") {
                    out.push(Check::new(
                        "coclass",
                        want.parse() == Ok(report.coclass),
                        format!("{name}: computed {} expected {want}", report.coclass),
                    ));
                }
                // the maximal-class criterion must hold at order >= 243
                if report.maximal_class && report.order >= 243 {
                    match huppert_check(&g) {
                        Ok(v) => out.push(Check::new(
                            "maximal-class-criterion",
                            v == HuppertVerdict::ConclusionHolds,
                            format!("{name}: verdict {v:?}"),
                        )),
                        Err(e) => out.push(Check::new("maximal-class-criterion", false, format!("{name}: {e}"))),
                    }
                }
            }
            Err(e) => out.push(Check::new("structure", false, format!("{name}: {e}"))),
        }
        if entry.expect.contains_key("tkt") || entry.expect.contains_key("ati") {
            match artin_pattern(&g) {
                Ok(ap) => {
                    if let Some(want) = entry.expect.get("tkt") {
                        let (_, computed) = ap.tkt.canonicalize();
                        out.push(Check::new(
                            "tkt",
                            computed == want,
                            format!("{name}: computed {computed} expected {want}"),
                        ));
                    }
                    if let Some(want) = entry.expect.get("ati") {
                        match parse_ttt(want) {
                            Ok(expected) => {
                                let mut got: Vec<LogType> = ap.ttt.to_vec();
                                let mut exp = expected.clone();
                                got.sort();
                                exp.sort();
                                out.push(Check::new(
                                    "ati-multiset",
                                    got == exp,
                                    format!("{name}: computed {} expected {want}", ap.ttt_string()),
                                ));
                                // positional comparison after orbit alignment,
                                // when the expected TKT pins the positions
                                if let (Some(tkt_want), 4) = (entry.expect.get("tkt"), expected.len()) {
                                    if let Ok(ktab) = lookup_named(tkt_want) {
                                        let expected_ap = ArtinPattern {
                                            ttt: [
                                                expected[0].clone(),
                                                expected[1].clone(),
                                                expected[2].clone(),
                                                expected[3].clone(),
                                            ],
                                            tkt: ktab,
                                        };
                                        out.push(Check::new(
                                            "ap-aligned",
                                            ap.equivalent(&expected_ap),
                                            format!(
                                                "{name}: computed [{}],({}) expected [{}],({})",
                                                ap.ttt_string(),
                                                ap.tkt,
                                                expected_ap.ttt_string(),
                                                expected_ap.tkt
                                            ),
                                        ));
                                    }
                                }
                            }
                            Err(e) => out.push(Check::new("ati-multiset", false, format!("{name}: {e}"))),
                        }
                    }
                }
                Err(e) => out.push(Check::new("artin-pattern", false, format!("{name}: {e}"))),
            }
        }
    }
    if let Some(want) = entry.expect.get("d2") {
        let d2: Option<u32> = want.parse().ok();
        let mut inp = D2_INTERVAL_INPUT;
        inp.claimed_d2 = d2;
        match shafarevich_interval(&inp) {
            Ok((lo, hi, ok)) => out.push(Check::new(
                "d2-range",
                ok == Some(true),
                format!("{name}: d2={want} within [{lo},{hi}]"),
            )),
            Err(e) => out.push(Check::new("d2-range", false, format!("{name}: {e}"))),
        }
    }
    if name == "54#13" {
        out.extend(census_54_13(&g));
    }
    out
}

fn lookup_named(name: &str) -> Result<CapitulationType> {
    crate::artin::NAMED_TYPES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, rep)| CapitulationType(*rep))
        .ok_or_else(|| Error::Other(format!("no named representative for {name}")))
}

/// Brute-force subgroup census for the order-54 catalog group: a unique
/// elementary subgroup of order 27, and thirteen subgroups of order 18 —
/// four triplets of conjugates with center of order 3, plus one normal
/// subgroup with trivial center.
fn census_54_13(g: &Group) -> Vec<Check> {
    let mut out = Vec::new();
    let elems = match g.elements_capped(ABELIAN_ENUM_CAP, "order-54 census") {
        Ok(e) => e,
        Err(e) => return vec![Check::new("census-54", false, e.to_string())],
    };
    // the 3-elements form the unique subgroup of order 27 (index 2)
    let three_part: Vec<&Perm> = elems.iter().filter(|e| e.order() % 2 == 1).collect();
    let unique27 = three_part.len() == 27 && three_part.iter().all(|e| e.order() <= 3);
    out.push(Check::new(
        "census-54-unique-27",
        unique27,
        format!("3-elements: {} (all of order <= 3: {})", three_part.len(), unique27),
    ));
    // order-9 subgroups of that elementary group, via pair closures
    let mut planes: BTreeSet<BTreeSet<Perm>> = BTreeSet::new();
    for a in &three_part {
        for b in &three_part {
            if let Ok(h) = Group::from_perms(g.degree(), vec![(*a).clone(), (*b).clone()]) {
                if h.order() == 9 {
                    if let Ok(hel) = h.elements_capped(64, "census") {
                        planes.insert(hel.into_iter().collect());
                    }
                }
            }
        }
    }
    // involutions adjoin planes they normalize
    let involutions: Vec<&Perm> = elems.iter().filter(|e| e.order() == 2).collect();
    let mut subs18: Vec<BTreeSet<Perm>> = Vec::new();
    for plane in &planes {
        for t in &involutions {
            let mut gens: Vec<Perm> = plane.iter().cloned().collect();
            gens.push((*t).clone());
            if let Ok(h) = Group::from_perms(g.degree(), gens) {
                if h.order() == 18 {
                    if let Ok(hel) = h.elements_capped(64, "census") {
                        let set: BTreeSet<Perm> = hel.into_iter().collect();
                        if !subs18.contains(&set) {
                            subs18.push(set);
                        }
                    }
                }
            }
        }
    }
    out.push(Check::new(
        "census-54-count-18",
        subs18.len() == 13,
        format!("order-18 subgroups: {}", subs18.len()),
    ));
    // conjugacy classes and center orders
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut assigned = vec![false; subs18.len()];
    for i in 0..subs18.len() {
        if assigned[i] {
            continue;
        }
        let mut class = vec![i];
        assigned[i] = true;
        for x in &elems {
            let conj: BTreeSet<Perm> = subs18[i].iter().map(|h| h.conj(x)).collect();
            if let Some(j) = subs18.iter().position(|s| *s == conj) {
                if !assigned[j] {
                    assigned[j] = true;
                    class.push(j);
                }
            }
        }
        classes.push(class);
    }
    let mut sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
    sizes.sort_unstable();
    out.push(Check::new(
        "census-54-classes",
        sizes == vec![1, 3, 3, 3, 3],
        format!("conjugacy class sizes: {sizes:?}"),
    ));
    let center_order = |set: &BTreeSet<Perm>| {
        set.iter()
            .filter(|z| set.iter().all(|x| z.comm(x).is_identity()))
            .count()
    };
    let mut types_ok = true;
    for class in &classes {
        let z = center_order(&subs18[class[0]]);
        if class.len() == 1 && z != 1 {
            types_ok = false;
        }
        if class.len() == 3 && z != 3 {
            types_ok = false;
        }
    }
    out.push(Check::new(
        "census-54-types",
        types_ok,
        "triplets have center order 3; the normal one has trivial center".to_string(),
    ));
    out
}

/// Verifies the whole catalog; returns per-entry check lists.
pub fn verify_catalog(entries: &[CatalogEntry]) -> Vec<(String, Vec<Check>)> {
    entries
        .iter()
        .map(|e| (e.name.clone(), verify_entry(e)))
        .collect()
}
