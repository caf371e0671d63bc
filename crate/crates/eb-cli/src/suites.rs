//! Lemma-verification suites: executable statements about every ring in a
//! corpus. Each suite returns a summary with its instance count and any
//! failures; the caller decides what a failure means for the exit code.

use eb_core::bitset::ElementSet;
use eb_core::dsl::{elaborate, parse, RingExpr};
use eb_core::semigroup::{abelian_group, ElementId, FiniteSemigroup};
use eb_core::solver::{davenport, erdos_burgess, ghw_bound, SearchConfig};
use eb_core::structure::{
    claim_b_sequence, ideal_generated_by, jacobson_radical, maximal_ideals, nilradical,
    quasi_regular_radical, quotient_ring,
};
use eb_core::{Error, FiniteRing, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::SuiteSummary;

pub const DEFAULT_SUITE_SEED: u64 = 0xeb00_5eed;

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Constants are computed exactly only for orders at or below this.
    pub eb_cap: usize,
    pub seed: u64,
    /// Instances drawn by each randomized suite.
    pub random_instances: usize,
    pub threads: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            eb_cap: 128,
            seed: DEFAULT_SUITE_SEED,
            random_instances: 100,
            threads: 1,
        }
    }
}

fn search_config(threads: usize) -> SearchConfig {
    SearchConfig {
        parallel_width: threads.max(1),
        ..SearchConfig::default()
    }
}

fn exact_eb(s: &FiniteSemigroup, threads: usize) -> Result<usize> {
    let out = erdos_burgess(s, &search_config(threads))?;
    out.value
        .exact()
        .ok_or_else(|| Error::property("search with the default budget must be exact"))
}

/// A corpus ring with its multiplicative semigroup and, when the order is
/// within the cap, its exact constant.
pub struct CorpusEntry {
    pub text: String,
    pub ring: FiniteRing,
    pub semigroup: FiniteSemigroup,
    pub eb: Option<usize>,
}

/// Elaborate a parsed corpus; every expression must fit the cap.
pub fn elaborate_corpus(
    corpus: &[(String, RingExpr)],
    cap: usize,
) -> Result<Vec<(String, FiniteRing)>> {
    corpus
        .iter()
        .map(|(text, expr)| {
            let ring = elaborate(expr, cap)
                .map_err(|e| e.with_context(format!("corpus entry {text:?}")))?;
            Ok((text.clone(), ring))
        })
        .collect()
}

/// Solve everything solvable up front so the suites can share the results.
pub fn prepare(rings: Vec<(String, FiniteRing)>, cfg: &SuiteConfig) -> Result<Vec<CorpusEntry>> {
    rings
        .into_iter()
        .map(|(text, ring)| {
            let semigroup = ring.mult_semigroup();
            let eb = if ring.order() <= cfg.eb_cap {
                Some(exact_eb(&semigroup, cfg.threads)?)
            } else {
                None
            };
            Ok(CorpusEntry {
                text,
                ring,
                semigroup,
                eb,
            })
        })
        .collect()
}

fn summarize(name: &str, instances: usize, failures: Vec<String>) -> SuiteSummary {
    SuiteSummary {
        name: name.to_string(),
        instances,
        passed: failures.is_empty(),
        failures,
    }
}

/// Every computed constant obeys `1 <= I(S) <= |S \ E(S)| + 1`.
pub fn ghw_suite(entries: &[CorpusEntry]) -> SuiteSummary {
    let mut instances = 0;
    let mut failures = Vec::new();
    for e in entries {
        let Some(v) = e.eb else { continue };
        instances += 1;
        let bound = ghw_bound(&e.semigroup);
        if v < 1 || v > bound {
            failures.push(format!("{}: I = {v} outside [1, {bound}]", e.text));
        }
    }
    summarize("ghw-bound", instances, failures)
}

/// Nilpotents, the intersection of maximal ideals, and the quasi-regular
/// elements are one and the same set.
pub fn radical_suite(entries: &[CorpusEntry]) -> SuiteSummary {
    let mut failures = Vec::new();
    for e in entries {
        let nil = nilradical(&e.ring);
        let jac = jacobson_radical(&e.ring);
        let quasi = quasi_regular_radical(&e.ring);
        if nil != jac || nil != quasi {
            failures.push(format!(
                "{}: nilradical {:?}, maximal-ideal intersection {:?}, quasi-regular {:?}",
                e.text,
                nil.to_vec(),
                jac.to_vec(),
                quasi.to_vec()
            ));
        }
    }
    summarize("radical-agreement", entries.len(), failures)
}

fn random_ids(rng: &mut ChaCha8Rng, order: usize, count: usize) -> Vec<ElementId> {
    (0..count)
        .map(|_| ElementId(rng.gen_range(0..order as u32)))
        .collect()
}

/// The constant of a subsemigroup never exceeds the ambient constant.
pub fn subsemigroup_suite(entries: &[CorpusEntry], cfg: &SuiteConfig) -> Result<SuiteSummary> {
    let eligible: Vec<&CorpusEntry> = entries.iter().filter(|e| e.ring.order() <= 32).collect();
    let mut failures = Vec::new();
    let mut instances = 0;
    if !eligible.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        for _ in 0..cfg.random_instances {
            let e = eligible[rng.gen_range(0..eligible.len())];
            let count = rng.gen_range(1..=3);
            let gens = random_ids(&mut rng, e.ring.order(), count);
            let gen_set = ElementSet::from_ids(e.ring.order(), &gens);
            let sub = e.semigroup.subsemigroup_closure(&gen_set)?;
            let sub_value = exact_eb(&sub.semigroup, cfg.threads)?;
            let base = e.eb.expect("order <= 32 is always solved");
            instances += 1;
            if sub_value > base {
                failures.push(format!(
                    "{} gens {:?}: I(sub) = {sub_value} > I(S) = {base}",
                    e.text,
                    gens.iter().map(|g| g.0).collect::<Vec<_>>()
                ));
            }
        }
    }
    Ok(summarize("subsemigroup-monotonicity", instances, failures))
}

/// The constant of a quotient ring never exceeds the source constant.
pub fn quotient_suite(entries: &[CorpusEntry], cfg: &SuiteConfig) -> Result<SuiteSummary> {
    let eligible: Vec<&CorpusEntry> = entries.iter().filter(|e| e.ring.order() <= 32).collect();
    let mut failures = Vec::new();
    let mut instances = 0;
    if !eligible.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x9e37_79b9_7f4a_7c15);
        for _ in 0..cfg.random_instances {
            let e = eligible[rng.gen_range(0..eligible.len())];
            let count = rng.gen_range(1..=2);
            let gens = random_ids(&mut rng, e.ring.order(), count);
            let ideal = ideal_generated_by(&e.ring, &gens)?;
            let (quotient, _) = quotient_ring(&e.ring, &ideal)?;
            let q_value = exact_eb(&quotient.mult_semigroup(), cfg.threads)?;
            let base = e.eb.expect("order <= 32 is always solved");
            instances += 1;
            if q_value > base {
                failures.push(format!(
                    "{} ideal gens {:?}: I(R/I) = {q_value} > I(R) = {base}",
                    e.text,
                    gens.iter().map(|g| g.0).collect::<Vec<_>>()
                ));
            }
        }
    }
    Ok(summarize("quotient-monotonicity", instances, failures))
}

/// Quotients by the intersection of the index-2 maximal ideals are Boolean.
pub fn boolean_quotient_suite(entries: &[CorpusEntry]) -> Result<SuiteSummary> {
    let mut failures = Vec::new();
    let mut instances = 0;
    for e in entries {
        let index_two: Vec<ElementSet> = maximal_ideals(&e.ring)
            .into_iter()
            .filter(|m| m.index == 2)
            .map(|m| m.elements)
            .collect();
        if index_two.is_empty() {
            continue;
        }
        instances += 1;
        let mut meet = ElementSet::full(e.ring.order());
        for m in &index_two {
            meet.intersect_with(m);
        }
        let (quotient, _) = quotient_ring(&e.ring, &meet)?;
        if !quotient.is_boolean() {
            failures.push(format!(
                "{}: quotient by {} index-2 ideals is not Boolean",
                e.text,
                index_two.len()
            ));
        }
    }
    Ok(summarize("boolean-quotient", instances, failures))
}

/// The CRT witness has one element per maximal ideal of index above two, is
/// free, and lower-bounds the exact constant wherever that is known.
pub fn certificate_suite(entries: &[CorpusEntry]) -> SuiteSummary {
    let mut failures = Vec::new();
    for e in entries {
        let expected = maximal_ideals(&e.ring)
            .iter()
            .filter(|m| m.index > 2)
            .count();
        match claim_b_sequence(&e.ring) {
            Ok(cert) => {
                if cert.sequence.len() != expected {
                    failures.push(format!(
                        "{}: certificate length {} != {} ideals of index > 2",
                        e.text,
                        cert.sequence.len(),
                        expected
                    ));
                }
                if let Some(v) = e.eb {
                    if v < cert.lower_bound {
                        failures.push(format!(
                            "{}: I = {v} below certified bound {}",
                            e.text, cert.lower_bound
                        ));
                    }
                }
            }
            Err(err) => failures.push(format!("{}: {err}", e.text)),
        }
    }
    summarize("crt-certificates", entries.len(), failures)
}

/// Boolean factors never change the constant: I(bool(k) x F) = I(F).
pub fn boolean_factor_suite(cfg: &SuiteConfig) -> Result<SuiteSummary> {
    let mut failures = Vec::new();
    let mut instances = 0;
    for field in ["GF(3)", "GF(5)", "GF(3) x GF(5)"] {
        let base_expr = parse(field).expect("fixed expression parses");
        let base = elaborate(&base_expr, cfg.eb_cap)?;
        let base_value = exact_eb(&base.mult_semigroup(), cfg.threads)?;
        for k in 1..=3u32 {
            let text = format!("bool({k}) x {field}");
            let expr = parse(&text).expect("fixed expression parses");
            let ring = elaborate(&expr, cfg.eb_cap)?;
            let value = exact_eb(&ring.mult_semigroup(), cfg.threads)?;
            instances += 1;
            if value != base_value {
                failures.push(format!(
                    "{text}: I = {value} != I({field}) = {base_value}"
                ));
            }
        }
    }
    Ok(summarize("boolean-factor-irrelevance", instances, failures))
}

fn partitions(total: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(total, total, &mut Vec::new(), &mut out);
    out
}

/// Brute-force Davenport constants match the closed forms: `1 + sum(d_i-1)`
/// for p-groups of order <= 64 and `m + n - 1` for rank two with `mn <= 36`.
pub fn davenport_suite(cfg: &SuiteConfig) -> Result<SuiteSummary> {
    let search = search_config(cfg.threads);
    let mut failures = Vec::new();
    let mut instances = 0;
    let mut check = |factors: Vec<u64>, expected: usize| -> Result<()> {
        let g = abelian_group(&factors)?;
        let out = davenport(&g, &search)?;
        let value = out
            .value
            .exact()
            .ok_or_else(|| Error::property("default budget search must be exact"))?;
        instances += 1;
        if value != expected {
            failures.push(format!(
                "D({}) = {value}, closed form says {expected}",
                g.label()
            ));
        }
        Ok(())
    };
    let primes = [
        2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
    ];
    for p in primes {
        let mut max_e = 0;
        while p.pow(max_e + 1) <= 64 {
            max_e += 1;
        }
        for e in 1..=max_e {
            for parts in partitions(e) {
                let mut factors: Vec<u64> = parts.iter().map(|&a| p.pow(a)).collect();
                factors.sort_unstable();
                let expected = 1 + factors.iter().map(|&d| d as usize - 1).sum::<usize>();
                check(factors, expected)?;
            }
        }
    }
    for m in 1u64..=6 {
        let mut n = m;
        while m * n <= 36 {
            check(vec![m, n], (m + n - 1) as usize)?;
            n += m;
        }
    }
    Ok(summarize("davenport-closed-forms", instances, failures))
}

/// All suites in a fixed order. An empty corpus yields an all-pass summary
/// with zero instances everywhere.
pub fn run_all(entries: &[CorpusEntry], cfg: &SuiteConfig) -> Result<Vec<SuiteSummary>> {
    if entries.is_empty() {
        return Ok([
            "ghw-bound",
            "radical-agreement",
            "subsemigroup-monotonicity",
            "quotient-monotonicity",
            "boolean-quotient",
            "crt-certificates",
            "boolean-factor-irrelevance",
            "davenport-closed-forms",
        ]
        .into_iter()
        .map(|name| summarize(name, 0, Vec::new()))
        .collect());
    }
    Ok(vec![
        ghw_suite(entries),
        radical_suite(entries),
        subsemigroup_suite(entries, cfg)?,
        quotient_suite(entries, cfg)?,
        boolean_quotient_suite(entries)?,
        certificate_suite(entries),
        boolean_factor_suite(cfg)?,
        davenport_suite(cfg)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::parse_corpus_text;

    fn entries_for(text: &str) -> Vec<CorpusEntry> {
        let corpus = parse_corpus_text(text, "test").unwrap();
        let rings = elaborate_corpus(&corpus, 4096).unwrap();
        prepare(rings, &SuiteConfig::default()).unwrap()
    }

    #[test]
    fn ghw_suite_accepts_z4() {
        let entries = entries_for("Z/4\n");
        assert_eq!(entries[0].eb, Some(3));
        let s = ghw_suite(&entries);
        assert_eq!(s.instances, 1);
        assert!(s.passed);
    }

    #[test]
    fn randomized_suites_are_seed_deterministic() {
        let entries = entries_for("Z/6\nZ/9\nbool(2)\n");
        let cfg = SuiteConfig {
            random_instances: 10,
            ..SuiteConfig::default()
        };
        let a = subsemigroup_suite(&entries, &cfg).unwrap();
        let b = subsemigroup_suite(&entries, &cfg).unwrap();
        assert_eq!(a.instances, 10);
        assert!(a.passed);
        assert_eq!(a.failures, b.failures);
        let q = quotient_suite(&entries, &cfg).unwrap();
        assert_eq!(q.instances, 10);
        assert!(q.passed, "{:?}", q.failures);
    }

    #[test]
    fn partitions_of_six() {
        assert_eq!(partitions(6).len(), 11);
        assert_eq!(partitions(1), vec![vec![1]]);
    }

    #[test]
    fn empty_corpus_passes_trivially() {
        let all = run_all(&[], &SuiteConfig::default()).unwrap();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|s| s.passed && s.instances == 0));
    }
}
