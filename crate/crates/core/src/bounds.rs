//! Upper bounds for the number of ordinary triple points on a surface of degree d.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundsError {
    #[error("{name} requires degree at least {min}, got {d}")]
    DegreeTooSmall { name: &'static str, min: u32, d: u32 },
    #[error("Brieskorn exponents must be at least 2 and nonempty")]
    BadExponents,
    #[error("empty interval ({a}, {b})")]
    EmptyInterval { a: Rational64, b: Rational64 },
    #[error("spectrum is empty")]
    EmptySpectrum,
    #[error("argument {0} must be positive")]
    NonPositive(&'static str),
}

/// Spectral numbers with multiplicities, values strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumDivisor {
    entries: Vec<(Rational64, u64)>,
}

impl SpectrumDivisor {
    pub fn from_map(map: BTreeMap<Rational64, u64>) -> Self {
        SpectrumDivisor {
            entries: map.into_iter().filter(|(_, m)| *m > 0).collect(),
        }
    }

    pub fn entries(&self) -> &[(Rational64, u64)] {
        &self.entries
    }

    /// Total number of spectral numbers (the Milnor number for Brieskorn input).
    pub fn total(&self) -> u64 {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Count of spectral numbers in the open interval (a, b).
    pub fn interval_count(&self, a: Rational64, b: Rational64) -> Result<u64, BoundsError> {
        if a >= b {
            return Err(BoundsError::EmptyInterval { a, b });
        }
        Ok(self.count_open(a, b))
    }

    fn count_open(&self, a: Rational64, b: Rational64) -> u64 {
        self.entries
            .iter()
            .filter(|(v, _)| *v > a && *v < b)
            .map(|(_, m)| m)
            .sum()
    }
}

impl fmt::Display for SpectrumDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(v, m)| format!("{v}:{m}"))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Spectrum of x_0^{a_0} + ... + x_n^{a_n}: all sums i_0/a_0 + ... + i_n/a_n with 1 <= i_j < a_j.
pub fn brieskorn_spectrum(exponents: &[u32]) -> Result<SpectrumDivisor, BoundsError> {
    if exponents.is_empty() || exponents.iter().any(|&a| a < 2) {
        return Err(BoundsError::BadExponents);
    }
    let mut acc: BTreeMap<Rational64, u64> = BTreeMap::new();
    acc.insert(Rational64::from_integer(0), 1);
    for &a in exponents {
        let mut next = BTreeMap::new();
        for (v, m) in &acc {
            for i in 1..a {
                *next
                    .entry(v + Rational64::new(i as i64, a as i64))
                    .or_insert(0) += m;
            }
        }
        acc = next;
    }
    Ok(SpectrumDivisor::from_map(acc))
}

/// Spectrum of a smooth surface of degree d (the cone singularity x^d+y^d+z^d).
pub fn homogeneous_surface_spectrum(d: u32) -> Result<SpectrumDivisor, BoundsError> {
    if d < 2 {
        return Err(BoundsError::DegreeTooSmall {
            name: "homogeneous spectrum",
            min: 2,
            d,
        });
    }
    brieskorn_spectrum(&[d, d, d])
}

/// Spectrum of an ordinary triple point.
pub fn triple_point_spectrum() -> SpectrumDivisor {
    brieskorn_spectrum(&[3, 3, 3]).expect("valid exponents")
}

/// Spectrum of an ordinary double point.
pub fn node_spectrum() -> SpectrumDivisor {
    brieskorn_spectrum(&[2, 2, 2]).expect("valid exponents")
}

/// Left endpoints of unit intervals realising every value of the count
/// functions: each critical value itself (both endpoints excluded) and one
/// point inside each gap between consecutive critical values.
pub fn candidate_alphas(a: &SpectrumDivisor, b: &SpectrumDivisor) -> Vec<Rational64> {
    let one = Rational64::from_integer(1);
    let mut critical: Vec<Rational64> = a
        .entries
        .iter()
        .chain(&b.entries)
        .flat_map(|(v, _)| [*v, v - one])
        .collect();
    critical.sort();
    critical.dedup();
    let mut out = Vec::with_capacity(2 * critical.len() + 1);
    if let Some(first) = critical.first() {
        out.push(first - one);
    }
    for w in critical.windows(2) {
        out.push(w[0]);
        out.push((w[0] + w[1]) / 2);
    }
    if let Some(last) = critical.last() {
        out.push(*last);
        out.push(last + one);
    }
    out
}

/// Best bound over the candidate intervals for a surface of degree d with singularities of spectrum `sing`.
pub fn spectrum_bound(d: u32, sing: &SpectrumDivisor) -> Result<u64, BoundsError> {
    if d < 3 {
        return Err(BoundsError::DegreeTooSmall {
            name: "spectrum bound",
            min: 3,
            d,
        });
    }
    if sing.is_empty() {
        return Err(BoundsError::EmptySpectrum);
    }
    let total = homogeneous_surface_spectrum(d)?;
    Ok(bound_over(&total, sing, candidate_alphas(&total, sing)))
}

/// min over alpha of floor(N_total(alpha, alpha+1) / N_sing(alpha, alpha+1)), intervals with N_sing > 0.
pub fn bound_over(
    total: &SpectrumDivisor,
    sing: &SpectrumDivisor,
    alphas: impl IntoIterator<Item = Rational64>,
) -> u64 {
    let one = Rational64::from_integer(1);
    alphas
        .into_iter()
        .filter_map(|a| {
            let s = sing.count_open(a, a + one);
            (s > 0).then(|| total.count_open(a, a + one) / s)
        })
        .min()
        .unwrap_or(u64::MAX)
}

fn need(name: &'static str, d: u32, min: u32) -> Result<(), BoundsError> {
    if d < min {
        return Err(BoundsError::DegreeTooSmall { name, min, d });
    }
    Ok(())
}

pub fn polar_bound(d: u32) -> Result<u64, BoundsError> {
    need("polar bound", d, 5)?;
    let d = d as u64;
    Ok(if d >= 7 {
        d * (d - 1) * (d - 4) / 6
    } else {
        (d - 1) * (d * d + d - 3) / 18
    })
}

pub fn miyaoka_bound(d: u32) -> Result<u64, BoundsError> {
    need("Miyaoka bound", d, 7)?;
    let d = d as u64;
    Ok(2 * d * (d - 1) * (d - 1) / 27)
}

/// Triple points on a curve of degree c lying on the surface.
pub fn curve_bound(c: u32, d: u32) -> Result<u64, BoundsError> {
    if c == 0 {
        return Err(BoundsError::NonPositive("c"));
    }
    need("curve bound", d, 2)?;
    Ok(c as u64 * (d as u64 - 1) / 2)
}

/// Triple points on a surface of degree v meeting the surface properly.
pub fn surface_bound(v: u32, d: u32) -> Result<u64, BoundsError> {
    if v == 0 {
        return Err(BoundsError::NonPositive("v"));
    }
    need("surface bound", d, 2)?;
    Ok(v as u64 * d as u64 * (d as u64 - 1) / 6)
}

pub fn combined_bound(d: u32) -> Result<u64, BoundsError> {
    need("combined bound", d, 3)?;
    if d <= 4 {
        return Ok(1);
    }
    let spec = spectrum_bound(d, &triple_point_spectrum())?;
    let other = if d <= 6 { polar_bound(d)? } else { miyaoka_bound(d)? };
    Ok(spec.min(other))
}

/// All bounds for one degree; inapplicable ones are `None`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsRow {
    pub degree: u32,
    pub polar: Option<u64>,
    pub miyaoka: Option<u64>,
    pub spectrum: Option<u64>,
    pub combined: u64,
}

pub fn bounds_row(d: u32) -> Result<BoundsRow, BoundsError> {
    Ok(BoundsRow {
        degree: d,
        polar: polar_bound(d).ok(),
        miyaoka: miyaoka_bound(d).ok(),
        spectrum: (d >= 5)
            .then(|| spectrum_bound(d, &triple_point_spectrum()))
            .transpose()?,
        combined: combined_bound(d)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn small_spectra() {
        assert_eq!(node_spectrum().entries(), &[(r(3, 2), 1)]);
        assert_eq!(
            triple_point_spectrum().entries(),
            &[(r(1, 1), 1), (r(4, 3), 3), (r(5, 3), 3), (r(2, 1), 1)]
        );
        let five = homogeneous_surface_spectrum(5).unwrap();
        let mults: Vec<u64> = five.entries().iter().map(|(_, m)| *m).collect();
        assert_eq!(mults, vec![1, 3, 6, 10, 12, 12, 10, 6, 3, 1]);
        assert_eq!(five.entries()[0].0, r(3, 5));
        assert_eq!(five.entries()[9].0, r(12, 5));
    }

    #[test]
    fn interval_counts() {
        let five = homogeneous_surface_spectrum(5).unwrap();
        assert_eq!(five.interval_count(r(3, 5), r(8, 5)).unwrap(), 31);
        assert_eq!(five.interval_count(r(4, 5), r(9, 5)).unwrap(), 40);
        assert_eq!(triple_point_spectrum().interval_count(r(4, 5), r(9, 5)).unwrap(), 7);
        assert!(five.interval_count(r(1, 1), r(1, 1)).is_err());
    }

    #[test]
    fn bound_tables() {
        let t3 = triple_point_spectrum();
        assert_eq!(spectrum_bound(5, &t3).unwrap(), 5);
        assert_eq!(spectrum_bound(5, &node_spectrum()).unwrap(), 31);
        let spec: Vec<u64> = (5..=12).map(|d| spectrum_bound(d, &t3).unwrap()).collect();
        assert_eq!(spec, vec![5, 11, 17, 29, 45, 60, 84, 114]);
        let polar: Vec<u64> = (5..=12).map(|d| polar_bound(d).unwrap()).collect();
        assert_eq!(polar, vec![6, 10, 21, 37, 60, 90, 128, 176]);
        let miy: Vec<u64> = (7..=12).map(|d| miyaoka_bound(d).unwrap()).collect();
        assert_eq!(miy, vec![18, 29, 42, 60, 81, 107]);
        let comb: Vec<u64> = (3..=12).map(|d| combined_bound(d).unwrap()).collect();
        assert_eq!(comb, vec![1, 1, 5, 10, 17, 29, 42, 60, 81, 107]);
    }

    #[test]
    fn linear_bounds() {
        assert_eq!(curve_bound(1, 6).unwrap(), 2);
        assert_eq!(curve_bound(3, 6).unwrap(), 7);
        assert_eq!(surface_bound(2, 6).unwrap(), 10);
        assert!(polar_bound(4).is_err());
        assert!(miyaoka_bound(6).is_err());
    }

    #[test]
    fn spectra_are_symmetric_with_milnor_total() {
        for d in 2..=12u32 {
            let s = homogeneous_surface_spectrum(d).unwrap();
            assert_eq!(s.total(), ((d - 1) as u64).pow(3));
            let three = Rational64::from_integer(3);
            let mirrored: BTreeMap<_, _> =
                s.entries().iter().map(|(v, m)| (three - v, *m)).collect();
            assert_eq!(SpectrumDivisor::from_map(mirrored), s);
        }
    }

    #[test]
    fn combined_is_below_each_applicable_bound() {
        for d in 5..=12 {
            let row = bounds_row(d).unwrap();
            for b in [row.polar, row.miyaoka, row.spectrum].into_iter().flatten() {
                assert!(row.combined <= b, "degree {d}");
            }
        }
    }

    proptest! {
        #[test]
        fn random_alphas_never_beat_the_sweep(d in 5u32..=9, n in -400i64..400, den in 1i64..97) {
            let t3 = triple_point_spectrum();
            let total = homogeneous_surface_spectrum(d).unwrap();
            let best = spectrum_bound(d, &t3).unwrap();
            let alpha = Rational64::new(n, den * 100);
            prop_assert!(bound_over(&total, &t3, [alpha]) >= best);
        }
    }
}
