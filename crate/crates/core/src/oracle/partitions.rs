use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::randkit::{partition_numbers_exact, Partition};

/// Largest total [`enumerate_partitions`] accepts.
pub const ENUMERATION_LIMIT: u32 = 60;

fn check(total: u32) -> Result<()> {
    if !(1..=ENUMERATION_LIMIT).contains(&total) {
        return Err(Error::param(format!(
            "enumeration total must lie in 1..={ENUMERATION_LIMIT}, got {total}"
        )));
    }
    Ok(())
}

fn walk<F: FnMut(&[u32])>(rest: u32, max: u32, parts: &mut Vec<u32>, f: &mut F) {
    if rest == 0 {
        f(parts);
        return;
    }
    for p in (1..=max.min(rest)).rev() {
        parts.push(p);
        walk(rest - p, p, parts, f);
        parts.pop();
    }
}

/// Calls `f` on every partition of `total` (parts non-increasing), in
/// decreasing lexicographic order.
pub fn for_each_partition<F: FnMut(&[u32])>(total: u32, mut f: F) -> Result<()> {
    check(total)?;
    walk(total, total, &mut Vec::new(), &mut f);
    Ok(())
}

/// Every partition of `total` exactly once, e.g. for 4:
/// `(4), (3,1), (2,2), (2,1,1), (1,1,1,1)`.
pub fn enumerate_partitions(total: u32) -> Result<Vec<Partition>> {
    let mut out = Vec::new();
    for_each_partition(total, |p| out.push(Partition::new(p.to_vec()).expect("valid parts")))?;
    Ok(out)
}

/// Number of partitions of `total`, counted by enumeration.
pub fn count_partitions_by_enumeration(total: u32) -> Result<u64> {
    let mut n = 0u64;
    for_each_partition(total, |_| n += 1)?;
    Ok(n)
}

/// Expected number of parts equal to `x` in a uniform partition of `total`:
/// `sum_{j >= 1} p(total - j x) / p(total)`, from exact partition numbers.
pub fn expected_part_multiplicity(total: u32, x: u32) -> Result<f64> {
    if total < 1 || x < 1 {
        return Err(Error::param("total and part size must be at least 1"));
    }
    let p = partition_numbers_exact(total);
    Ok(multiplicity_from(&p, total, x))
}

/// [`expected_part_multiplicity`] for every part size `1..=total`.
pub fn expected_part_multiplicities(total: u32) -> Result<Vec<f64>> {
    if total < 1 {
        return Err(Error::param("total must be at least 1"));
    }
    let p = partition_numbers_exact(total);
    Ok((1..=total).map(|x| multiplicity_from(&p, total, x)).collect())
}

fn multiplicity_from(p: &[num_bigint::BigUint], total: u32, x: u32) -> f64 {
    let denom = p[total as usize].to_f64().expect("finite");
    (1..=total / x)
        .map(|j| p[(total - j * x) as usize].to_f64().expect("finite") / denom)
        .sum()
}

/// Bose–Einstein occupancy `1 / (exp(c x) - 1)` with `c = pi / sqrt(6 total)`,
/// the large-total approximation of [`expected_part_multiplicity`].
pub fn bose_einstein_occupancy(total: u32, x: u32) -> f64 {
    let c = std::f64::consts::PI / (6.0 * total as f64).sqrt();
    1.0 / (c * x as f64).exp_m1()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_in_order() {
        let got: Vec<Vec<u32>> = enumerate_partitions(4).unwrap().iter().map(|p| p.parts().to_vec()).collect();
        assert_eq!(got, vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]);
        assert_eq!(enumerate_partitions(1).unwrap().len(), 1);
        assert!(enumerate_partitions(61).is_err());
        assert!(enumerate_partitions(0).is_err());
    }

    #[test]
    fn multiplicities_sum_to_total() {
        // sum_x x E[m_x] = total.
        let m = expected_part_multiplicities(30).unwrap();
        let s: f64 = m.iter().enumerate().map(|(i, v)| (i + 1) as f64 * v).sum();
        assert!((s - 30.0).abs() < 1e-10);
        // Partitions of 2: {2}, {1,1}; ones appear 2/2 = 1 time on average.
        assert_eq!(expected_part_multiplicity(2, 1).unwrap(), 1.0);
    }
}
