//! Exact classification of a system: ranks, irredundancy, property (*), `m(A)`,
//! strict balance and the associated pair `(B, b')`.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{bareiss_rank, primitive_integer_row, rref, scale_to_integers, to_rational, ExactInt as Num};
use crate::system::RadoSystem;

/// Largest column count accepted by the subset enumerations.
pub const MAX_SUBSET_COLUMNS: usize = 16;

pub fn rank_rational(system: &RadoSystem) -> usize {
    bareiss_rank(&system.matrix_rows())
}

/// Rank of `A` restricted to `cols`; zero for an empty column set.
pub fn column_rank(system: &RadoSystem, cols: &[usize]) -> usize {
    if cols.is_empty() {
        return 0;
    }
    bareiss_rank(&system.column_restriction(cols))
}

pub fn satisfies_star(system: &RadoSystem) -> bool {
    let r = rref(&to_rational(&system.matrix_rows()));
    r.rows.iter().all(|row| row.iter().filter(|x| !x.is_zero()).count() != 2)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Irredundancy {
    pub found: bool,
    /// Lexicographically least k-distinct solution in `[bound]^k`.
    pub witness: Option<Vec<u64>>,
    pub bound: u64,
}

/// `max(1000, k (1 + max|a_ij|) (1 + |b|_inf))`, saturating.
pub fn default_search_bound(system: &RadoSystem) -> u64 {
    let k = BigInt::from(system.cols());
    let v = k * (BigInt::one() + system.max_abs_entry()) * (BigInt::one() + system.max_abs_rhs());
    v.to_u64().unwrap_or(u64::MAX).max(1000)
}

/// Searches `[bound]^k` for a solution of `Ax = b` with pairwise distinct coordinates.
pub fn is_irredundant(system: &RadoSystem, bound: u64) -> Irredundancy {
    let none = Irredundancy { found: false, witness: None, bound };
    if bound == 0 {
        return none;
    }
    let Some(plan) = SearchPlan::build(system) else {
        return none;
    };
    let witness = if plan.fits_i128(bound) {
        plan.convert::<i128>().search(bound)
    } else {
        plan.convert::<BigInt>().search(bound)
    };
    Irredundancy { found: witness.is_some(), witness, bound }
}

/// One pivot row: `d * x_pivot + sum(a_j x_j) = e` with every `j < pivot` free.
#[derive(Debug, Clone)]
struct PivotRow<T> {
    pivot: usize,
    d: T,
    terms: Vec<(usize, T)>,
    e: T,
}

#[derive(Debug, Clone)]
struct SearchPlan<T> {
    k: usize,
    /// `row_of[i]` is the pivot row solving coordinate `i`, if any.
    row_of: Vec<Option<usize>>,
    rows: Vec<PivotRow<T>>,
}

impl SearchPlan<BigInt> {
    /// Eliminates with the columns in reverse order so that every pivot depends only on
    /// free coordinates of smaller index. Returns `None` when the system has no
    /// k-distinct solution for structural reasons.
    fn build(system: &RadoSystem) -> Option<Self> {
        let k = system.cols();
        let aug: Vec<Vec<BigInt>> = system
            .augmented_rows()
            .into_iter()
            .map(|row| {
                let mut rev: Vec<BigInt> = row[..k].iter().rev().cloned().collect();
                rev.push(row[k].clone());
                rev
            })
            .collect();
        let red = rref(&to_rational(&aug));
        let mut row_of = vec![None; k];
        let mut rows = Vec::new();
        for (row, &q) in red.rows.iter().zip(&red.pivots) {
            if q == k {
                return None;
            }
            let ints = scale_to_integers(row);
            let pivot = k - 1 - q;
            let (d, e) = (ints[q].clone(), ints[k].clone());
            let terms: Vec<(usize, BigInt)> = (q + 1..k)
                .filter(|&c| !ints[c].is_zero())
                .map(|c| (k - 1 - c, ints[c].clone()))
                .collect();
            // x_p = x_j can never be distinct.
            if e.is_zero() && terms.len() == 1 && terms[0].1 == -&d {
                return None;
            }
            row_of[pivot] = Some(rows.len());
            rows.push(PivotRow { pivot, d, terms, e });
        }
        Some(Self { k, row_of, rows })
    }

    fn fits_i128(&self, bound: u64) -> bool {
        let limit = BigInt::one() << 60u32;
        bound < (1u64 << 40)
            && self.k < 64
            && self.rows.iter().all(|r| {
                r.d.abs() < limit && r.e.abs() < limit && r.terms.iter().all(|(_, a)| a.abs() < limit)
            })
    }

    fn convert<T: Num>(&self) -> SearchPlan<T> {
        SearchPlan {
            k: self.k,
            row_of: self.row_of.clone(),
            rows: self
                .rows
                .iter()
                .map(|r| PivotRow {
                    pivot: r.pivot,
                    d: T::from_big(&r.d),
                    terms: r.terms.iter().map(|(j, a)| (*j, T::from_big(a))).collect(),
                    e: T::from_big(&r.e),
                })
                .collect(),
        }
    }
}

impl<T: Num> SearchPlan<T> {
    fn search(&self, bound: u64) -> Option<Vec<u64>> {
        let mut x: Vec<Option<T>> = vec![None; self.k];
        let bound_t = T::from_u64(bound);
        if self.dfs(0, &mut x, &bound_t, bound) {
            Some(x.into_iter().map(|v| v.expect("complete assignment").as_coord()).collect())
        } else {
            None
        }
    }

    fn dfs(&self, i: usize, x: &mut Vec<Option<T>>, bound_t: &T, bound: u64) -> bool {
        if i == self.k {
            return true;
        }
        match self.row_of[i] {
            Some(r) => {
                let row = &self.rows[r];
                let mut rhs = row.e.clone();
                for (j, a) in &row.terms {
                    rhs = rhs - a.clone() * x[*j].clone().expect("earlier coordinate");
                }
                let (q, rem) = rhs.div_rem(&row.d);
                if !rem.is_zero() || q < T::one() || &q > bound_t || x[..i].iter().flatten().any(|v| *v == q) {
                    return false;
                }
                x[i] = Some(q);
                if self.dfs(i + 1, x, bound_t, bound) {
                    return true;
                }
                x[i] = None;
                false
            }
            None => {
                for v in 1..=bound {
                    let vt = T::from_u64(v);
                    if x[..i].iter().flatten().any(|u| *u == vt) {
                        continue;
                    }
                    x[i] = Some(vt);
                    if self.feasible(i, x, bound_t) && self.dfs(i + 1, x, bound_t, bound) {
                        return true;
                    }
                }
                x[i] = None;
                false
            }
        }
    }

    /// Every pivot past `i` must still be able to land in `[1, bound]`.
    fn feasible(&self, i: usize, x: &[Option<T>], bound_t: &T) -> bool {
        self.rows.iter().filter(|r| r.pivot > i).all(|row| {
            let (mut lo, mut hi) = (row.e.clone(), row.e.clone());
            let mut fixed = row.e.clone();
            let mut g = row.d.clone();
            for (j, a) in &row.terms {
                match &x[*j] {
                    Some(v) => {
                        let t = a.clone() * v.clone();
                        lo = lo - t.clone();
                        hi = hi - t.clone();
                        fixed = fixed - t;
                    }
                    None => {
                        g = g.gcd(a);
                        let (small, big) = (a.clone(), a.clone() * bound_t.clone());
                        if a.is_positive() {
                            lo = lo - big;
                            hi = hi - small;
                        } else {
                            lo = lo - small;
                            hi = hi - big;
                        }
                    }
                }
            }
            // d > 0 after scaling, so x_pivot ranges over [lo/d, hi/d]; the unassigned
            // terms and d * x_pivot only reach multiples of g.
            hi >= row.d && lo <= bound_t.clone() * row.d.clone() && fixed.is_multiple_of(&g)
        })
    }
}

/// Column subsets with `min..=max` elements, by size then lexicographically.
fn subsets(k: usize, sizes: impl Iterator<Item = usize>) -> impl Iterator<Item = Vec<usize>> {
    sizes.flat_map(move |s| (0..k).combinations(s))
}

fn complement(k: usize, w: &[usize]) -> Vec<usize> {
    (0..k).filter(|c| !w.contains(c)).collect()
}

fn check_columns(system: &RadoSystem) -> Result<()> {
    if system.cols() > MAX_SUBSET_COLUMNS {
        return Err(Error::CapExceeded { what: "column count", actual: system.cols(), cap: MAX_SUBSET_COLUMNS });
    }
    Ok(())
}

/// The partition ratio `(|W|-1) / (|W|-1 + rank(A_Wbar) - rank A)`, or the offending denominator.
fn partition_ratio(system: &RadoSystem, w: &[usize], rank: usize) -> std::result::Result<BigRational, i64> {
    let num = w.len() as i64 - 1;
    let den = num + column_rank(system, &complement(system.cols(), w)) as i64 - rank as i64;
    if den <= 0 {
        Err(den)
    } else {
        Ok(BigRational::new(num.into(), den.into()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MValue {
    pub value: BigRational,
    pub partition: Vec<usize>,
}

impl MValue {
    /// `-1/m`, the exponent of the threshold `n^(-1/m)`.
    pub fn threshold_exponent(&self) -> BigRational {
        -self.value.recip()
    }
}

pub fn compute_m(system: &RadoSystem) -> Result<MValue> {
    check_columns(system)?;
    let k = system.cols();
    if k < 2 {
        return Err(Error::InvalidInput("m(A) needs at least two columns".into()));
    }
    let rank = rank_rational(system);
    let mut best: Option<MValue> = None;
    for w in subsets(k, 2..=k) {
        let value = partition_ratio(system, &w, rank)
            .map_err(|denominator| Error::DegeneratePartition { partition: w.clone(), denominator })?;
        if best.as_ref().is_none_or(|b| value > b.value) {
            best = Some(MValue { value, partition: w });
        }
    }
    Ok(best.expect("k >= 2 gives at least one subset"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictBalance {
    pub balanced: bool,
    pub violating: Option<Vec<usize>>,
}

pub fn is_strictly_balanced(system: &RadoSystem) -> Result<StrictBalance> {
    check_columns(system)?;
    let (l, k) = (system.rows(), system.cols());
    let rank = rank_rational(system);
    if rank != l {
        return Err(Error::NotFullRank { rank, rows: l });
    }
    let full_den = k as i64 - 1 - l as i64;
    if full_den <= 0 {
        return Err(Error::DegeneratePartition { partition: (0..k).collect(), denominator: full_den });
    }
    let target = BigRational::new((k as i64 - 1).into(), full_den.into());
    for w in subsets(k, 2..k) {
        let ok = partition_ratio(system, &w, l).is_ok_and(|r| r < target);
        if !ok {
            return Ok(StrictBalance { balanced: false, violating: Some(w) });
        }
    }
    Ok(StrictBalance { balanced: true, violating: None })
}

/// Checks recorded for an associated pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairValidation {
    pub full_rank: bool,
    pub irredundant_matrix: bool,
    pub irredundant_pair: bool,
    pub satisfies_star: bool,
    pub strictly_balanced: bool,
    pub m_value: BigRational,
    pub m_matches: bool,
}

impl PairValidation {
    pub fn all_pass(&self) -> bool {
        self.full_rank
            && self.irredundant_matrix
            && self.irredundant_pair
            && self.satisfies_star
            && self.strictly_balanced
            && self.m_matches
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociatedPair {
    pub system: RadoSystem,
    /// `column_map[j]` is the column of `A` that column `j` of `B` came from.
    pub column_map: Vec<usize>,
    pub validation: PairValidation,
}

impl AssociatedPair {
    pub fn is_identity(&self) -> bool {
        self.column_map.iter().enumerate().all(|(i, &c)| i == c)
    }

    /// Restricts a solution of `Ax = b` to the coordinates of `B`.
    pub fn project<T: Clone>(&self, x: &[T]) -> Vec<T> {
        self.column_map.iter().map(|&c| x[c].clone()).collect()
    }
}

/// Runs every check on a candidate, cheapest first, stopping at the first failure.
/// Returns `None` if a check fails.
pub fn validate_candidate(b: &RadoSystem, m_target: &BigRational) -> Option<PairValidation> {
    if b.cols() < 2 || rank_rational(b) != b.rows() || !satisfies_star(b) {
        return None;
    }
    if !is_strictly_balanced(b).is_ok_and(|s| s.balanced) {
        return None;
    }
    let m = compute_m(b).ok()?;
    if &m.value != m_target {
        return None;
    }
    if !is_irredundant(&b.homogeneous(), default_search_bound(b)).found {
        return None;
    }
    if !is_irredundant(b, default_search_bound(b)).found {
        return None;
    }
    Some(PairValidation {
        full_rank: true,
        irredundant_matrix: true,
        irredundant_pair: true,
        satisfies_star: true,
        strictly_balanced: true,
        m_value: m.value,
        m_matches: true,
    })
}

/// Finds `(B, b')` by scanning column sets `W` from largest to smallest (lexicographic within
/// a size) and taking the row space of `(A | b)` supported on `W`.
pub fn associated_pair(system: &RadoSystem) -> Result<AssociatedPair> {
    check_columns(system)?;
    let k = system.cols();
    let m_target = compute_m(system)?.value;
    let full_rank = rank_rational(system) == system.rows();
    let mut candidates = 0;
    for w in subsets(k, (2..=k).rev()) {
        let b = if w.len() == k && full_rank {
            system.clone()
        } else {
            match supported_rows(system, &w) {
                Some(b) => b,
                None => continue,
            }
        };
        candidates += 1;
        if let Some(validation) = validate_candidate(&b, &m_target) {
            return Ok(AssociatedPair { system: b, column_map: w, validation });
        }
    }
    Err(Error::AssociatedPairNotFound { candidates })
}

/// A basis of the rows of `(A | b)`'s row space that vanish outside `w`, restricted to `w`.
fn supported_rows(system: &RadoSystem, w: &[usize]) -> Option<RadoSystem> {
    let k = system.cols();
    let wbar = complement(k, w);
    let order: Vec<usize> = wbar.iter().chain(w).copied().collect();
    let aug = system.augmented_rows();
    let permuted: Vec<Vec<BigInt>> = aug
        .iter()
        .map(|row| order.iter().map(|&c| row[c].clone()).chain([row[k].clone()]).collect())
        .collect();
    let red = rref(&to_rational(&permuted));
    let mut entries = Vec::new();
    let mut rhs = Vec::new();
    let mut count = 0;
    for (row, &p) in red.rows.iter().zip(&red.pivots) {
        if p < wbar.len() {
            continue;
        }
        if p == k {
            // 0 = nonzero: the pair has no solutions at all.
            return None;
        }
        let ints = primitive_integer_row(&row[wbar.len()..]);
        entries.extend_from_slice(&ints[..w.len()]);
        rhs.push(ints[w.len()].clone());
        count += 1;
    }
    if count == 0 {
        return None;
    }
    RadoSystem::new(count, w.len(), entries, rhs).ok()
}

/// Everything the classifier knows about a system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixProfile {
    pub rank: usize,
    pub irredundant_pair: Irredundancy,
    pub irredundant_matrix: Irredundancy,
    pub satisfies_star: bool,
    pub m: Option<MValue>,
    /// Set when (*) holds but some column set has a non-positive denominator.
    pub degenerate_partition: Option<Vec<usize>>,
    /// `None` when `A` is not of full row rank or the balance test is degenerate.
    pub strict_balance: Option<StrictBalance>,
    pub search_bound_used: u64,
}

pub fn analyze(system: &RadoSystem, bound: Option<u64>) -> Result<MatrixProfile> {
    check_columns(system)?;
    let bound = bound.unwrap_or_else(|| default_search_bound(system));
    let star = satisfies_star(system);
    let (m, degenerate_partition) = if star && system.cols() >= 2 {
        match compute_m(system) {
            Ok(m) => (Some(m), None),
            Err(Error::DegeneratePartition { partition, .. }) => (None, Some(partition)),
            Err(e) => return Err(e),
        }
    } else {
        (None, None)
    };
    Ok(MatrixProfile {
        rank: rank_rational(system),
        irredundant_pair: is_irredundant(system, bound),
        irredundant_matrix: is_irredundant(&system.homogeneous(), bound),
        satisfies_star: star,
        m,
        degenerate_partition,
        strict_balance: is_strictly_balanced(system).ok(),
        search_bound_used: bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn stacked_schur() -> RadoSystem {
        RadoSystem::from_rows(&[&[1, 1, -1, 0, 0], &[0, 0, 1, 1, -1]], &[0, 0])
    }

    #[test]
    fn ranks() {
        assert_eq!(rank_rational(&RadoSystem::schur()), 1);
        assert_eq!(rank_rational(&stacked_schur()), 2);
        assert_eq!(column_rank(&RadoSystem::schur(), &[]), 0);
        assert_eq!(rank_rational(&RadoSystem::from_rows(&[&[1, 2], &[2, 4]], &[0, 0])), 1);
    }

    #[test]
    fn star_examples() {
        assert!(satisfies_star(&RadoSystem::schur()));
        assert!(!satisfies_star(&RadoSystem::equation(&[2, -3])));
        assert!(!satisfies_star(&RadoSystem::from_rows(&[&[2, -3, 0], &[0, 2, -3]], &[0, 0])));
        // One non-zero entry alone does not break (*).
        assert!(satisfies_star(&RadoSystem::equation(&[0, 5, 0])));
    }

    #[test]
    fn irredundancy_examples() {
        let r = is_irredundant(&RadoSystem::schur(), 10);
        assert_eq!(r.witness, Some(vec![1, 2, 3]));
        assert!(!is_irredundant(&RadoSystem::equation(&[1, -1]), 100).found);
        assert!(!is_irredundant(&RadoSystem::equation(&[1, 1]), 100).found);
        assert_eq!(is_irredundant(&RadoSystem::equation(&[2, -3]), 100).witness, Some(vec![3, 2]));
        assert_eq!(is_irredundant(&RadoSystem::three_ap(), 100).witness, Some(vec![1, 2, 3]));
        assert_eq!(is_irredundant(&RadoSystem::from_rows(&[&[1, 1, -1]], &[1]), 10).witness, Some(vec![2, 3, 4]));
        assert!(!is_irredundant(&RadoSystem::from_rows(&[&[1, 1, 1]], &[3]), 50).found);
    }

    #[test]
    fn irredundancy_rejects_inconsistent_and_forced_equal() {
        let inconsistent = RadoSystem::from_rows(&[&[1, 1, -1], &[2, 2, -2]], &[0, 1]);
        assert!(!is_irredundant(&inconsistent, 100).found);
        let forced = RadoSystem::from_rows(&[&[0, 0, 0, 1, -1]], &[0]);
        assert!(!is_irredundant(&forced, 1000).found);
    }

    #[test]
    fn irredundancy_handles_huge_coefficients() {
        let big: BigInt = "100000000000000000000000".parse().unwrap();
        let sys = RadoSystem::new(1, 2, vec![big.clone(), -big], vec![BigInt::zero()]).unwrap();
        assert!(!is_irredundant(&sys, 50).found);
        let sys = RadoSystem::new(
            1,
            3,
            vec![BigInt::one(), BigInt::one(), -BigInt::one()],
            vec![BigInt::zero()],
        )
        .unwrap();
        assert!(is_irredundant(&sys, 1u64 << 50).found);
    }

    #[test]
    fn m_examples() {
        assert_eq!(compute_m(&RadoSystem::schur()).unwrap().value, q(2, 1));
        assert_eq!(compute_m(&RadoSystem::three_ap()).unwrap().value, q(2, 1));
        assert_eq!(compute_m(&RadoSystem::sidon()).unwrap().value, q(3, 2));
        let m = compute_m(&stacked_schur()).unwrap();
        assert_eq!(m.value, q(2, 1));
        assert_eq!(m.threshold_exponent(), q(-1, 2));
    }

    #[test]
    fn m_matches_brute_force_for_stacked_schur() {
        // Every maximizer, including the full column set.
        let sys = stacked_schur();
        let mut maxers = Vec::new();
        for mask in 0u32..32 {
            let w: Vec<usize> = (0..5).filter(|i| mask >> i & 1 == 1).collect();
            if w.len() < 2 {
                continue;
            }
            if partition_ratio(&sys, &w, 2).unwrap() == q(2, 1) {
                maxers.push(w);
            }
        }
        assert!(maxers.contains(&vec![0, 1, 2, 3, 4]));
    }

    #[test]
    fn compute_m_reports_degenerate_partition() {
        let sys = RadoSystem::from_rows(&[&[1, 0, 0], &[0, 1, 0]], &[0, 0]);
        assert!(matches!(compute_m(&sys), Err(Error::DegeneratePartition { .. })));
    }

    #[test]
    fn compute_m_rejects_wide_systems() {
        let sys = RadoSystem::equation(&[1; 17]);
        assert!(matches!(compute_m(&sys), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn strict_balance_examples() {
        assert!(is_strictly_balanced(&RadoSystem::schur()).unwrap().balanced);
        let sb = is_strictly_balanced(&stacked_schur()).unwrap();
        assert_eq!(sb.violating, Some(vec![0, 1, 2]));
        let zero = is_strictly_balanced(&RadoSystem::equation(&[1, 2, 0, -3])).unwrap();
        assert!(!zero.balanced);
        let rank_deficient = RadoSystem::from_rows(&[&[1, 1, -1], &[2, 2, -2]], &[0, 0]);
        assert!(matches!(is_strictly_balanced(&rank_deficient), Err(Error::NotFullRank { .. })));
    }

    #[test]
    fn associated_pair_examples() {
        let p = associated_pair(&RadoSystem::schur()).unwrap();
        assert!(p.is_identity());
        assert_eq!(p.system, RadoSystem::schur());
        assert!(associated_pair(&RadoSystem::three_ap()).unwrap().is_identity());

        let p = associated_pair(&stacked_schur()).unwrap();
        assert_eq!(p.column_map, vec![0, 1, 2]);
        assert_eq!(p.system, RadoSystem::schur());
        assert!(p.validation.all_pass());
        assert_eq!(p.validation.m_value, q(2, 1));
    }

    #[test]
    fn associated_pair_of_rank_deficient_system() {
        let sys = RadoSystem::from_rows(&[&[1, 1, -1], &[2, 2, -2]], &[0, 0]);
        let p = associated_pair(&sys).unwrap();
        assert_eq!(p.system, RadoSystem::schur());
        assert_eq!(p.column_map, vec![0, 1, 2]);
    }

    #[test]
    fn associated_pair_projects_solutions() {
        let sys = stacked_schur();
        let p = associated_pair(&sys).unwrap();
        let x = [1i64, 2, 3, 4, 7];
        assert!(sys.is_solution_i64(&x));
        assert!(p.system.is_solution_i64(&p.project(&x)));
    }

    #[test]
    fn profile_of_schur() {
        let prof = analyze(&RadoSystem::schur(), None).unwrap();
        assert_eq!(prof.rank, 1);
        assert!(prof.irredundant_pair.found && prof.irredundant_matrix.found);
        assert_eq!(prof.m.unwrap().value, q(2, 1));
        assert!(prof.strict_balance.unwrap().balanced);
        assert_eq!(prof.search_bound_used, 1000);
    }

    fn nonzero_row() -> impl Strategy<Value = Vec<i64>> {
        (3usize..=6).prop_flat_map(|k| prop::collection::vec((1i64..=9).prop_flat_map(|v| prop_oneof![Just(v), Just(-v)]), k))
    }

    fn naive_rank(rows: &[Vec<i64>]) -> usize {
        let mut m: Vec<Vec<BigRational>> =
            rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
        let mut rank = 0;
        let cols = m.first().map_or(0, Vec::len);
        for c in 0..cols {
            if let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) {
                m.swap(rank, p);
                for i in rank + 1..m.len() {
                    let f = &m[i][c] / &m[rank][c];
                    for j in 0..cols {
                        let d = &f * &m[rank][j];
                        m[i][j] -= d;
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn rank_matches_naive_elimination(rows in (1usize..=4, 1usize..=6).prop_flat_map(|(l, k)| prop::collection::vec(prop::collection::vec(-9i64..=9, k), l))) {
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            let zeros = vec![0; rows.len()];
            prop_assert_eq!(rank_rational(&RadoSystem::from_rows(&refs, &zeros)), naive_rank(&rows));
        }
    }

    proptest! {
        #[test]
        fn single_row_m_and_balance(row in nonzero_row()) {
            let k = row.len() as i64;
            let sys = RadoSystem::equation(&row);
            prop_assert_eq!(compute_m(&sys).unwrap().value, q(k - 1, k - 2));
            prop_assert!(is_strictly_balanced(&sys).unwrap().balanced);
        }

        #[test]
        fn m_invariant_under_row_operations(
            rows in prop::collection::vec(prop::collection::vec(-5i64..=5, 5), 2),
            scale in prop_oneof![-4i64..=-1, 1i64..=4],
        ) {
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            let sys = RadoSystem::from_rows(&refs, &[0, 0]);
            let swapped = RadoSystem::from_rows(&[refs[1], refs[0]], &[0, 0]);
            let scaled_row: Vec<i64> = rows[0].iter().map(|x| x * scale).collect();
            let scaled = RadoSystem::from_rows(&[&scaled_row, refs[1]], &[0, 0]);
            let base = compute_m(&sys);
            prop_assert_eq!(base.clone().map(|m| m.value), compute_m(&swapped).map(|m| m.value));
            prop_assert_eq!(base.map(|m| m.value), compute_m(&scaled).map(|m| m.value));
        }

        #[test]
        fn witnesses_verify(row in nonzero_row(), b in -3i64..=3) {
            let sys = RadoSystem::from_rows(&[&row], &[b]);
            let r = is_irredundant(&sys, 60);
            if let Some(w) = r.witness {
                let xs: Vec<i64> = w.iter().map(|&v| v as i64).collect();
                prop_assert!(sys.is_solution_i64(&xs));
                let mut sorted = xs.clone();
                sorted.sort_unstable();
                sorted.dedup();
                prop_assert_eq!(sorted.len(), xs.len());
                prop_assert!(xs.iter().all(|&v| v >= 1 && v <= 60));
            }
        }
    }

    #[test]
    fn witness_is_lexicographically_least() {
        // Brute force over [12]^3 for a few equations.
        for coeffs in [[1i64, 1, -1], [2, 1, -3], [1, -2, 1], [3, -1, -1], [1, 3, -2]] {
            let sys = RadoSystem::from_rows(&[&coeffs], &[1]);
            let mut brute = None;
            'outer: for a in 1..=12i64 {
                for b in 1..=12 {
                    for c in 1..=12 {
                        if a != b && b != c && a != c && sys.is_solution_i64(&[a, b, c]) {
                            brute = Some(vec![a as u64, b as u64, c as u64]);
                            break 'outer;
                        }
                    }
                }
            }
            assert_eq!(is_irredundant(&sys, 12).witness, brute, "{coeffs:?}");
        }
    }
}
