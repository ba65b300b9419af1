//! Bordism verdicts from characteristic-number tables, the verification
//! pipeline for the two infinite families and the sporadic examples, and a
//! bounded search over special characteristic matrices.

use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::charmatrix::{lambda2_n12, lambda2_n7, lambda2_n8, lambda2_stong_type_a, lambda2_stong_type_b, CharMatrix, Ring};
use crate::error::{Error, Result};
use crate::invariants::{all_numbers, chern_number, InvariantTable, Partition};
use crate::polytope::SimplexProduct;
use crate::stong::{self, StongParams};

/// Each field holds the first witnessing partition, or `None`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct BordismVerdict {
    /// Some Chern number is nonzero.
    pub nonzero_unitary: Option<Partition>,
    /// Some Stiefel–Whitney number is nonzero. For an `INT` table these are
    /// the numbers of the quasitoric manifold, whose Stiefel–Whitney classes
    /// are the Chern classes mod 2, so the witness is a Chern partition.
    pub nonbounding_unoriented: Option<Partition>,
}

impl BordismVerdict {
    pub fn is_nonzero_unitary(&self) -> bool {
        self.nonzero_unitary.is_some()
    }

    pub fn is_nonbounding_unoriented(&self) -> bool {
        self.nonbounding_unoriented.is_some()
    }
}

pub fn verdict(table: &InvariantTable) -> Result<BordismVerdict> {
    if !table.is_complete() {
        return Err(Error::IncompleteTable(format!(
            "{} entries do not cover the partitions of {}",
            table.entries.len(),
            table.dim()
        )));
    }
    let first_odd = table.entries.iter().find(|e| e.value.is_odd()).map(|e| e.partition.clone());
    Ok(match table.ring {
        Ring::Int => BordismVerdict { nonzero_unitary: table.first_nonzero().cloned(), nonbounding_unoriented: first_odd },
        Ring::Mod2 => BordismVerdict { nonzero_unitary: None, nonbounding_unoriented: first_odd },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

impl Check {
    fn from_bool(name: &'static str, ok: bool, detail: impl Into<String>) -> Self {
        let status = if ok { CheckStatus::Pass } else { CheckStatus::Fail };
        Self { name, status, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyCase {
    pub family: &'static str,
    pub l: usize,
    pub dims: Vec<usize>,
    /// Dimension of the small cover; the quasitoric manifold has twice this.
    pub n: usize,
    pub stong: String,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SporadicCase {
    pub name: &'static str,
    pub partition: Partition,
    #[serde(with = "crate::serde_int")]
    pub expected: BigInt,
    #[serde(with = "crate::serde_int")]
    pub value: BigInt,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MainTheoremReport {
    pub l_max: usize,
    pub sw_cap: usize,
    pub families: Vec<FamilyCase>,
    pub sporadic: Vec<SporadicCase>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub l_max: i64,
    /// Small covers up to this dimension get a full SW table.
    pub sw_cap: usize,
    /// Hard limit on the small-cover dimension of any family member.
    pub max_dimension: usize,
}

impl VerifyConfig {
    pub fn new(l_max: i64) -> Self {
        Self { l_max, sw_cap: 12, max_dimension: 64 }
    }
}

pub fn verify_main_theorem(l_max: i64) -> Result<MainTheoremReport> {
    verify_main_theorem_with(&VerifyConfig::new(l_max))
}

pub fn verify_main_theorem_with(cfg: &VerifyConfig) -> Result<MainTheoremReport> {
    let l_max = usize::try_from(cfg.l_max)
        .map_err(|_| Error::InvalidArgument(format!("l_max must be non-negative, got {}", cfg.l_max)))?;
    let largest = 8 * l_max + 11;
    if largest > cfg.max_dimension {
        return Err(Error::CapExceeded { dimension: largest, cap: cfg.max_dimension });
    }
    let mut families = Vec::new();
    for l in 0..=l_max {
        families.push(family_case("A", l, lambda2_stong_type_a(l), StongParams::with_zeros(&[2], 4 * l + 3)?, cfg)?);
        families.push(family_case("B", l, lambda2_stong_type_b(l), StongParams::with_zeros(&[4, 2], 8 * l + 4)?, cfg)?);
    }
    let sporadic = [
        ("n7", lambda2_n7(), vec![4, 3], -2),
        ("n8", lambda2_n8(), vec![4, 4], 4),
        ("n12", lambda2_n12(), vec![6, 6], 64),
    ]
    .into_par_iter()
    .map(|(name, lambda, parts, expected)| {
        let pi = Partition::new(parts, lambda.polytope().dim())?;
        let value = chern_number(&lambda, &pi)?;
        let expected = BigInt::from(expected);
        Ok(SporadicCase { name, partition: pi, passed: value == expected, expected, value })
    })
    .collect::<Result<Vec<_>>>()?;
    let passed = families.iter().flat_map(|f| &f.checks).all(|c| c.status != CheckStatus::Fail)
        && sporadic.iter().all(|s| s.passed);
    Ok(MainTheoremReport { l_max, sw_cap: cfg.sw_cap, families, sporadic, passed })
}

fn family_case(
    family: &'static str,
    l: usize,
    lambda: CharMatrix,
    params: StongParams,
    cfg: &VerifyConfig,
) -> Result<FamilyCase> {
    let n = lambda.polytope().dim();
    let mut checks = Vec::new();
    checks.push(Check::from_bool("valid", lambda.is_valid(), ""));
    checks.push(Check::from_bool("special", lambda.is_special()?, ""));
    let reduced = lambda.mod2_reduce()?;
    let stong_matrix = stong::char_matrix(&params)?;
    let same_polytope = reduced.polytope() == stong_matrix.polytope();
    let equivalent = same_polytope && reduced.equivalent_mod2(&stong_matrix)?;
    checks.push(Check::from_bool("mod2_equivalent_to_stong", equivalent, params.to_string()));
    checks.push(Check::from_bool("stong_indecomposable", params.is_indecomposable()?, ""));
    checks.push(Check::from_bool("stong_orientable", params.is_orientable(), ""));
    checks.push(if n <= cfg.sw_cap {
        let v = verdict(&all_numbers(&reduced)?)?;
        let detail = v.nonbounding_unoriented.as_ref().map(|p| format!("witness {p}")).unwrap_or_default();
        Check::from_bool("sw_nonvanishing", v.is_nonbounding_unoriented(), detail)
    } else {
        Check {
            name: "sw_nonvanishing",
            status: CheckStatus::Skipped,
            detail: format!("dimension {n} above cap {}", cfg.sw_cap),
        }
    });
    Ok(FamilyCase {
        family,
        l,
        dims: lambda.polytope().factor_dims().to_vec(),
        n,
        stong: params.to_string(),
        checks,
    })
}

/// Integer vectors of length `len` with entries in `[-bound, bound]` summing
/// to `target`, ranked in lexicographic order.
#[derive(Debug, Clone)]
pub struct SumConstrainedVectors {
    len: usize,
    bound: i64,
    target: i64,
    /// `counts[t][s + offset]`: completions of length `t` with sum `s`.
    counts: Vec<Vec<u128>>,
    offset: i64,
}

impl SumConstrainedVectors {
    pub fn new(len: usize, bound: i64, target: i64) -> Self {
        let offset = bound * len as i64 + target.abs();
        let width = (2 * offset + 1) as usize;
        let mut counts = vec![vec![0u128; width]; len + 1];
        counts[0][offset as usize] = 1;
        for t in 1..=len {
            for s in 0..width as i64 {
                let mut c = 0u128;
                for v in -bound..=bound {
                    let prev = s - v;
                    if (0..width as i64).contains(&prev) {
                        c += counts[t - 1][prev as usize];
                    }
                }
                counts[t][s as usize] = c;
            }
        }
        Self { len, bound, target, counts, offset }
    }

    fn completions(&self, len: usize, sum: i64) -> u128 {
        let i = sum + self.offset;
        if i < 0 || i as usize >= self.counts[len].len() {
            0
        } else {
            self.counts[len][i as usize]
        }
    }

    pub fn count(&self) -> u128 {
        self.completions(self.len, self.target)
    }

    pub fn unrank(&self, mut index: u128) -> Option<Vec<i64>> {
        if index >= self.count() {
            return None;
        }
        let mut out = Vec::with_capacity(self.len);
        let mut remaining = self.target;
        for t in (0..self.len).rev() {
            for v in -self.bound..=self.bound {
                let c = self.completions(t, remaining - v);
                if index < c {
                    out.push(v);
                    remaining -= v;
                    break;
                }
                index -= c;
            }
        }
        Some(out)
    }

    pub fn rank(&self, v: &[i64]) -> Option<u128> {
        if v.len() != self.len || v.iter().any(|x| x.abs() > self.bound) || v.iter().sum::<i64>() != self.target {
            return None;
        }
        let mut index = 0u128;
        let mut remaining = self.target;
        for (i, &x) in v.iter().enumerate() {
            let t = self.len - i - 1;
            for w in -self.bound..x {
                index += self.completions(t, remaining - w);
            }
            remaining -= x;
        }
        Some(index)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Exhaustive,
    Randomized,
}

impl std::str::FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(SearchMode::Exhaustive),
            "randomized" => Ok(SearchMode::Randomized),
            other => Err(Error::Parse(format!("unknown search mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    pub dims: Vec<usize>,
    pub bound: i64,
    pub seed: u64,
    pub budget: u64,
    pub mode: SearchMode,
    /// First candidate index for exhaustive runs.
    pub start_index: u128,
}

impl SearchConfig {
    pub fn exhaustive(dims: &[usize], bound: i64, budget: u64) -> Self {
        Self { dims: dims.to_vec(), bound, seed: 0, budget, mode: SearchMode::Exhaustive, start_index: 0 }
    }

    pub fn randomized(dims: &[usize], bound: i64, budget: u64, seed: u64) -> Self {
        Self { dims: dims.to_vec(), bound, seed, budget, mode: SearchMode::Randomized, start_index: 0 }
    }

    /// Hash of everything that defines the candidate stream.
    pub fn stream_hash(&self) -> String {
        let mode = match self.mode {
            SearchMode::Exhaustive => "exhaustive",
            SearchMode::Randomized => "randomized",
        };
        let key = format!("dims={:?};bound={};mode={mode};seed={}", self.dims, self.bound, self.seed);
        format!("{:x}", Sha256::digest(key.as_bytes()))
    }
}

/// Candidates in canonical form: identity on the facets through the last
/// vertex, with each factor's last column summing to 1 and bounded by `B`.
#[derive(Debug, Clone)]
pub struct CandidateSpace {
    polytope: SimplexProduct,
    columns: SumConstrainedVectors,
}

impl CandidateSpace {
    pub fn new(dims: &[usize], bound: i64) -> Result<Self> {
        if bound < 1 {
            return Err(Error::InvalidArgument(format!("entry bound must be at least 1, got {bound}")));
        }
        let polytope = SimplexProduct::new(dims)?;
        let columns = SumConstrainedVectors::new(polytope.dim(), bound, 1);
        Ok(Self { polytope, columns })
    }

    pub fn len(&self) -> u128 {
        let r = self.polytope.num_factors() as u32;
        self.columns.count().checked_pow(r).unwrap_or(u128::MAX)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn matrix(&self, mut index: u128) -> Option<CharMatrix> {
        if index >= self.len() {
            return None;
        }
        let (n, m) = (self.polytope.dim(), self.polytope.num_facets());
        let mut rows = vec![vec![0i64; m]; n];
        for (i, c) in self.polytope.vertex_facets(&self.polytope.last_vertex()).into_iter().enumerate() {
            rows[i][c] = 1;
        }
        let base = self.columns.count();
        let last = self.polytope.last_facets();
        let mut digits = vec![0u128; last.len()];
        for d in digits.iter_mut().rev() {
            *d = index % base;
            index /= base;
        }
        for (&c, &d) in last.iter().zip(&digits) {
            for (row, v) in rows.iter_mut().zip(self.columns.unrank(d)?) {
                row[c] = v;
            }
        }
        CharMatrix::from_i64(self.polytope.clone(), Ring::Int, &rows).ok()
    }

    /// Index of a matrix already in canonical form.
    pub fn index_of(&self, lambda: &CharMatrix) -> Option<u128> {
        if lambda.polytope() != &self.polytope || lambda.ring() != Ring::Int {
            return None;
        }
        let canonical = self.matrix(0)?;
        let eliminated = self.polytope.vertex_facets(&self.polytope.last_vertex());
        if eliminated.iter().any(|&c| lambda.column(c) != canonical.column(c)) {
            return None;
        }
        let base = self.columns.count();
        let mut index = 0u128;
        for c in self.polytope.last_facets() {
            let col: Option<Vec<i64>> = lambda.column(c).iter().map(|v| i64::try_from(v).ok()).collect();
            index = index * base + self.columns.rank(&col?)?;
        }
        Some(index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchHit {
    pub index: u128,
    pub matrix: CharMatrix,
    pub verdict: BordismVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub config: SearchConfig,
    pub space_size: u128,
    pub examined: u64,
    pub valid: u64,
    pub special: u64,
    pub hits: Vec<SearchHit>,
    /// Every candidate within the bound was examined.
    pub complete: bool,
    /// Where an exhaustive run would resume.
    pub next_index: Option<u128>,
}

enum Outcome {
    Invalid,
    NotSpecial,
    Special(Option<SearchHit>),
}

fn examine(space: &CandidateSpace, index: u128) -> Result<Outcome> {
    let lambda = space.matrix(index).ok_or_else(|| Error::Internal(format!("candidate {index} out of range")))?;
    if !lambda.is_valid() {
        return Ok(Outcome::Invalid);
    }
    if !lambda.is_special()? {
        return Ok(Outcome::NotSpecial);
    }
    let v = verdict(&all_numbers(&lambda)?)?;
    Ok(Outcome::Special(v.is_nonzero_unitary().then_some(SearchHit { index, matrix: lambda, verdict: v })))
}

pub fn search_special(cfg: &SearchConfig) -> Result<SearchReport> {
    if cfg.budget < 1 {
        return Err(Error::InvalidArgument("search budget must be at least 1".into()));
    }
    let space = CandidateSpace::new(&cfg.dims, cfg.bound)?;
    let total = space.len();
    let (indices, complete, next_index): (Vec<u128>, bool, Option<u128>) = match cfg.mode {
        SearchMode::Exhaustive => {
            let start = cfg.start_index.min(total);
            let end = start.saturating_add(u128::from(cfg.budget)).min(total);
            let complete = start == 0 && end == total;
            ((start..end).collect(), complete, (end < total).then_some(end))
        }
        SearchMode::Randomized => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let mut picks: Vec<u128> = if total == 0 {
                Vec::new()
            } else {
                (0..cfg.budget).map(|_| rng.gen_range(0..total)).collect()
            };
            picks.sort_unstable();
            picks.dedup();
            let complete = picks.len() as u128 == total;
            (picks, complete, None)
        }
    };
    let outcomes = indices.par_iter().map(|&i| examine(&space, i)).collect::<Result<Vec<_>>>()?;
    let mut report = SearchReport {
        config: cfg.clone(),
        space_size: total,
        examined: outcomes.len() as u64,
        valid: 0,
        special: 0,
        hits: Vec::new(),
        complete,
        next_index,
    };
    for o in outcomes {
        match o {
            Outcome::Invalid => {}
            Outcome::NotSpecial => report.valid += 1,
            Outcome::Special(hit) => {
                report.valid += 1;
                report.special += 1;
                report.hits.extend(hit);
            }
        }
    }
    Ok(report)
}

/// Plain-text resume file: the stream hash and the next candidate index.
pub struct Checkpoint;

impl Checkpoint {
    pub fn load(path: &Path, cfg: &SearchConfig) -> Result<Option<u128>> {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(Error::Checkpoint(format!("{}: {e}", path.display()))),
        };
        let mut hash = None;
        let mut next = None;
        for line in text.lines() {
            match line.split_once(' ') {
                Some(("config", h)) => hash = Some(h.trim().to_string()),
                Some(("next", v)) => {
                    next = Some(v.trim().parse::<u128>().map_err(|_| Error::Checkpoint(format!("bad index {v:?}")))?)
                }
                _ if line.trim().is_empty() => {}
                _ => return Err(Error::Checkpoint(format!("unrecognized line {line:?}"))),
            }
        }
        let (Some(hash), Some(next)) = (hash, next) else {
            return Err(Error::Checkpoint("missing config or next line".into()));
        };
        if hash != cfg.stream_hash() {
            return Err(Error::Checkpoint("checkpoint belongs to a different search configuration".into()));
        }
        Ok(Some(next))
    }

    pub fn save(path: &Path, cfg: &SearchConfig, next: u128) -> Result<()> {
        let text = format!("config {}\nnext {next}\n", cfg.stream_hash());
        fs::write(path, text).map_err(|e| Error::Checkpoint(format!("{}: {e}", path.display())))
    }
}

/// Exhaustive search continuing from (and updating) a checkpoint file.
pub fn search_special_resumable(cfg: &SearchConfig, checkpoint: &Path) -> Result<SearchReport> {
    if cfg.mode != SearchMode::Exhaustive {
        return Err(Error::InvalidArgument("checkpoints apply to exhaustive searches only".into()));
    }
    let mut cfg = cfg.clone();
    if let Some(next) = Checkpoint::load(checkpoint, &cfg)? {
        cfg.start_index = next;
    }
    let report = search_special(&cfg)?;
    let next = report.next_index.unwrap_or(report.space_size);
    Checkpoint::save(checkpoint, &cfg, next)?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{partitions, TableEntry};
    use num_traits::Zero;
    use proptest::prelude::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec(), parts.iter().sum()).unwrap()
    }

    #[test]
    fn sporadic_verdicts() {
        let v7 = verdict(&all_numbers(&lambda2_n7()).unwrap()).unwrap();
        assert_eq!(v7.nonzero_unitary, Some(p(&[5, 2])));
        assert_eq!(v7.nonbounding_unoriented, None);
        let v12 = verdict(&all_numbers(&lambda2_n12()).unwrap()).unwrap();
        assert!(v12.is_nonzero_unitary());
    }

    #[test]
    fn zero_and_incomplete_tables() {
        let mut table = all_numbers(&lambda2_n7()).unwrap();
        for e in &mut table.entries {
            e.value = BigInt::zero();
        }
        assert_eq!(verdict(&table).unwrap(), BordismVerdict::default());
        table.entries.pop();
        assert!(matches!(verdict(&table), Err(Error::IncompleteTable(_))));
    }

    #[test]
    fn mod2_table_verdict() {
        let table = all_numbers(&lambda2_stong_type_a(0).mod2_reduce().unwrap()).unwrap();
        let v = verdict(&table).unwrap();
        assert!(v.is_nonbounding_unoriented());
        assert!(!v.is_nonzero_unitary());
    }

    proptest! {
        #[test]
        fn verdict_is_monotone(values in prop::collection::vec(-2i64..=2, 7), which in 0usize..7, bump in 1i64..4) {
            let entries: Vec<TableEntry> = partitions(5)
                .into_iter()
                .zip(&values)
                .map(|(partition, &v)| TableEntry { partition, value: BigInt::from(v) })
                .collect();
            let mut table = all_numbers(&lambda2_stong_type_a(0)).unwrap();
            table.entries = entries;
            let before = verdict(&table).unwrap();
            if table.entries[which].value.is_zero() {
                table.entries[which].value = BigInt::from(bump);
            }
            let after = verdict(&table).unwrap();
            prop_assert!(!before.is_nonzero_unitary() || after.is_nonzero_unitary());
            prop_assert!(!before.is_nonbounding_unoriented() || after.is_nonbounding_unoriented());
        }

        #[test]
        fn rank_unrank_roundtrip(len in 1usize..5, bound in 1i64..4, idx in any::<u64>()) {
            let s = SumConstrainedVectors::new(len, bound, 1);
            let total = s.count();
            prop_assume!(total > 0);
            let i = u128::from(idx) % total;
            let v = s.unrank(i).unwrap();
            prop_assert_eq!(v.iter().sum::<i64>(), 1);
            prop_assert!(v.iter().all(|x| x.abs() <= bound));
            prop_assert_eq!(s.rank(&v), Some(i));
        }
    }

    #[test]
    fn sum_constrained_counts_and_order() {
        let s = SumConstrainedVectors::new(2, 2, 1);
        assert_eq!(s.count(), 4);
        let all: Vec<Vec<i64>> = (0..4).map(|i| s.unrank(i).unwrap()).collect();
        assert_eq!(all, vec![vec![-1, 2], vec![0, 1], vec![1, 0], vec![2, -1]]);
        assert_eq!(s.unrank(4), None);
        // brute force count for a bigger case
        let s = SumConstrainedVectors::new(4, 2, 1);
        let mut brute = 0;
        for a in -2..=2i64 {
            for b in -2..=2i64 {
                for c in -2..=2i64 {
                    let d = 1 - a - b - c;
                    if d.abs() <= 2 {
                        brute += 1;
                    }
                }
            }
        }
        assert_eq!(s.count(), brute);
    }

    #[test]
    fn low_dimensional_search_finds_only_zero_numbers() {
        for dims in [&[1usize, 1][..], &[2]] {
            let r = search_special(&SearchConfig::exhaustive(dims, 2, 1_000)).unwrap();
            assert!(r.complete);
            assert!(r.hits.is_empty());
        }
        let r = search_special(&SearchConfig::exhaustive(&[1, 1], 2, 1_000)).unwrap();
        assert_eq!((r.space_size, r.special), (16, 3));
    }

    #[test]
    fn search_reaches_the_n7_example() {
        let space = CandidateSpace::new(&[4, 3], 1).unwrap();
        let idx = space.index_of(&lambda2_n7()).unwrap();
        assert_eq!(space.matrix(idx).unwrap(), lambda2_n7());
        let mut cfg = SearchConfig::exhaustive(&[4, 3], 1, 1);
        cfg.start_index = idx;
        let r = search_special(&cfg).unwrap();
        assert_eq!(r.hits.len(), 1);
        assert_eq!(r.hits[0].matrix, lambda2_n7());
        assert_eq!(r.hits[0].verdict.nonzero_unitary, Some(p(&[5, 2])));
        assert!(!r.complete);
    }

    #[test]
    fn randomized_search_is_deterministic() {
        let cfg = SearchConfig::randomized(&[1, 2], 2, 40, 7);
        let a = search_special(&cfg).unwrap();
        let b = search_special(&cfg).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        for hit in &a.hits {
            assert!(hit.matrix.is_valid() && hit.matrix.is_special().unwrap());
        }
    }

    #[test]
    fn config_errors() {
        assert!(search_special(&SearchConfig::exhaustive(&[1, 1], 0, 10)).is_err());
        assert!(search_special(&SearchConfig::exhaustive(&[1, 1], 1, 0)).is_err());
        assert!(matches!(verify_main_theorem(-1), Err(Error::InvalidArgument(_))));
        let cfg = VerifyConfig { l_max: 3, sw_cap: 12, max_dimension: 20 };
        assert_eq!(verify_main_theorem_with(&cfg), Err(Error::CapExceeded { dimension: 35, cap: 20 }));
    }

    #[test]
    fn checkpoint_resume() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("search.ckpt");
        let cfg = SearchConfig::exhaustive(&[1, 1], 2, 10);
        let first = search_special_resumable(&cfg, &path).unwrap();
        assert_eq!((first.examined, first.next_index), (10, Some(10)));
        assert_eq!(Checkpoint::load(&path, &cfg).unwrap(), Some(10));
        let second = search_special_resumable(&cfg, &path).unwrap();
        assert_eq!((second.examined, second.next_index), (6, None));
        assert_eq!(Checkpoint::load(&path, &cfg).unwrap(), Some(16));
        let other = SearchConfig::exhaustive(&[1, 1], 3, 10);
        assert!(matches!(Checkpoint::load(&path, &other), Err(Error::Checkpoint(_))));
        fs::write(&path, "garbage\n").unwrap();
        assert!(matches!(Checkpoint::load(&path, &cfg), Err(Error::Checkpoint(_))));
    }

    #[test]
    fn main_theorem_l0() {
        let report = verify_main_theorem(0).unwrap();
        assert!(report.passed, "{report:#?}");
        assert_eq!(report.families.len(), 2);
        assert!(report.sporadic.iter().all(|s| s.passed));
    }
}
