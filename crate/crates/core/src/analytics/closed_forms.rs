use num::bigint::BigUint;
use num::rational::BigRational;
use num::BigInt;

use super::{binomial, stirling_binomial_estimate, AnalyticsError};
use crate::pda::ParamRecord;

/// One scheme's parameters: `K`, `1 - M/N`, `F`, `R`. A column is `None`
/// when the parameters make it non-integral.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemeRow {
    pub label: String,
    pub k: Option<BigUint>,
    pub one_minus_ratio: Option<BigRational>,
    pub f: Option<BigUint>,
    pub rate: Option<BigRational>,
    /// Stirling estimate of `F`, for annotation only.
    pub f_estimate: Option<f64>,
    /// Tags for values resting on more than the closed forms, such as
    /// `inferred:K` for a column whose formula is read off data.
    pub caveats: Vec<String>,
}

fn ratio(num: &BigUint, den: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}

impl SchemeRow {
    /// Row of a `(K, F, F - g, S)` PDA.
    fn from_counts(label: String, k: BigUint, f: BigUint, g: BigUint, s: BigUint) -> Self {
        SchemeRow {
            label,
            one_minus_ratio: Some(ratio(&g, &f)),
            rate: Some(ratio(&s, &f)),
            k: Some(k),
            f: Some(f),
            f_estimate: None,
            caveats: Vec::new(),
        }
    }

    /// Whether a measured PDA has exactly these parameters.
    pub fn matches_params(&self, p: &ParamRecord) -> bool {
        let big = |x: usize| BigUint::from(x);
        self.k.as_ref() == Some(&big(p.k))
            && self.f.as_ref() == Some(&big(p.f))
            && self.one_minus_ratio.as_ref() == Some(&ratio(&big(p.g), &big(p.f)))
            && self.rate.as_ref() == Some(&ratio(&big(p.s), &big(p.f)))
    }
}

fn check(ok: bool, what: &'static str) -> Result<(), AnalyticsError> {
    if ok {
        Ok(())
    } else {
        Err(AnalyticsError::Range(what))
    }
}

/// The restricted combined subset family: `K = C(n,a+t) C(a+t,a)`,
/// `F = C(n,b-t)`, `g = C(n-a-t,b-t)`, `S = C(n,a+b) C(a+b,b)`.
pub fn ex3_params(n: u64, a: u64, b: u64, t: u64) -> Result<SchemeRow, AnalyticsError> {
    check(a >= 1 && b >= 1 && a + b <= n, "need a, b >= 1 and a + b <= n")?;
    check(t < b && a + t <= n, "need t < b and a + t <= n")?;
    let mut row = SchemeRow::from_counts(
        format!("n={n},a={a},b={b},t={t}"),
        binomial(n, a + t) * binomial(a + t, a),
        binomial(n, b - t),
        binomial(n - a - t, b - t),
        binomial(n, a + b) * binomial(a + b, b),
    );
    row.f_estimate = (b > t && b - t < n).then(|| stirling_binomial_estimate(n as f64, (b - t) as f64));
    Ok(row)
}

/// One factor of the intersection-`t` product: `a`-subsets against
/// `b`-subsets of `[n]` meeting in `t` elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntersectionSide {
    pub n: u64,
    pub a: u64,
    pub b: u64,
    pub t: u64,
}

impl IntersectionSide {
    fn check(&self) -> Result<(), AnalyticsError> {
        let IntersectionSide { n, a, b, t } = *self;
        check(0 < a && a < n && 0 < b && b < n, "need 0 < a, b < n")?;
        check(t <= a.min(b) && a + b - t <= n, "need t <= min(a, b) and a + b - t <= n")
    }

    fn k(&self) -> BigUint {
        binomial(self.n, self.b)
    }

    fn f(&self) -> BigUint {
        binomial(self.n, self.a)
    }

    fn degree(&self) -> BigUint {
        binomial(self.b, self.t) * binomial(self.n - self.b, self.a - self.t)
    }

    fn colors(&self) -> BigUint {
        let d = self.a + self.b - 2 * self.t;
        binomial(self.n, d) * binomial(self.n - d, self.t)
    }
}

/// Star product of two intersection-`t` colorings. Every column is
/// multiplicative.
pub fn ex42_params(first: IntersectionSide, second: IntersectionSide) -> Result<SchemeRow, AnalyticsError> {
    first.check()?;
    second.check()?;
    let mut row = SchemeRow::from_counts(
        format!(
            "n={},a={},b={},t={};n'={},a'={},b'={},t'={}",
            first.n, first.a, first.b, first.t, second.n, second.a, second.b, second.t
        ),
        first.k() * second.k(),
        first.f() * second.f(),
        first.degree() * second.degree(),
        first.colors() * second.colors(),
    );
    row.f_estimate = Some(
        stirling_binomial_estimate(first.n as f64, first.a as f64)
            * stirling_binomial_estimate(second.n as f64, second.a as f64),
    );
    Ok(row)
}

/// Colors the cycle contributes: `2 + 6` when `6 | m`, `3 + 6` for `m = 3`.
fn cycle_color_factor(m: u64) -> Result<u64, AnalyticsError> {
    match m {
        3 => Ok(9),
        m if m >= 6 && m % 6 == 0 => Ok(8),
        _ => Err(AnalyticsError::UnsupportedCycle(m)),
    }
}

/// Cycle product of `C_m` with a `(K', F', F' - g', S')` base gives
/// `(m K', m F', m F' - 3 g', c S')`.
fn cycle_row(
    label: String,
    m: u64,
    k: BigUint,
    f: BigUint,
    g: BigUint,
    s: BigUint,
) -> Result<SchemeRow, AnalyticsError> {
    let c = cycle_color_factor(m)?;
    Ok(SchemeRow::from_counts(label, k * m, f * m, g * 3u32, s * c))
}

/// Cycle product of `C_m` with the disjoint-union coloring of `a`- and
/// `b`-subsets: `K = m C(n,b)`, `F = m C(n,a)`,
/// `1 - M/N = (3/m) C(n-b,a) / C(n,a)`, `R = (8/m) C(n,a+b) / C(n,a)`
/// (`9/m` for `m = 3`).
pub fn ex50_params(n: u64, a: u64, b: u64, m: u64) -> Result<SchemeRow, AnalyticsError> {
    check(a >= 1 && b >= 1 && a + b <= n, "need a, b >= 1 and a + b <= n")?;
    let mut row = cycle_row(
        format!("n={n},a={a},b={b},m={m}"),
        m,
        binomial(n, b),
        binomial(n, a),
        binomial(n - b, a),
        binomial(n, a + b),
    )?;
    row.f_estimate = Some(m as f64 * stirling_binomial_estimate(n as f64, a as f64));
    Ok(row)
}

fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).expect("q >= 2 has a divisor");
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
    }
    r == 1
}

/// Least positive `x` with `(l + 1) | n x`.
pub fn minimal_x(n: u64, l: u64) -> u64 {
    let m = l + 1;
    m / num::integer::gcd(n, m)
}

/// The family is stated for `n > l`; smaller `n` still gives integral
/// parameters and is computed, but tagged.
fn tang_caveats(row: &mut SchemeRow, n: u64, l: u64) {
    row.caveats.push("inferred:K".into());
    if n <= l {
        row.caveats.push("range:n<=l".into());
    }
}

fn check_tang(n: u64, q: u64, l: u64, x: u64) -> Result<(BigUint, BigUint, BigUint, BigUint), AnalyticsError> {
    check(l >= 1 && n >= 1, "need n, l >= 1")?;
    if !is_prime_power(q) {
        return Err(AnalyticsError::NotPrimePower(q));
    }
    let minimal = minimal_x(n, l);
    if x != minimal {
        return Err(AnalyticsError::XNotMinimal { x, minimal });
    }
    let ql = BigUint::from(q).pow(l as u32);
    let f = (q - 1) * &ql * x * n / (l + 1);
    let g = BigUint::from(x * (q - 1)) * BigUint::from(q).pow(l as u32 - 1);
    let s = BigUint::from(x) * ql;
    Ok((BigUint::from(n * q), f, g, s))
}

/// `F = (q-1) q^l x n / (l+1)`, `g = x (q-1) q^{l-1}`, `S = x q^l`, with
/// `K = n q` inferred from the published rows.
pub fn tang_params(n: u64, q: u64, l: u64, x: u64) -> Result<SchemeRow, AnalyticsError> {
    let (k, f, g, s) = check_tang(n, q, l, x)?;
    let mut row = SchemeRow::from_counts(format!("({n},{q},{l},{x})"), k, f, g, s);
    tang_caveats(&mut row, n, l);
    Ok(row)
}

/// [`tang_params`] pushed through the cycle product with `C_m`.
pub fn tang_cycle_params(n: u64, q: u64, l: u64, x: u64, m: u64) -> Result<SchemeRow, AnalyticsError> {
    let (k, f, g, s) = check_tang(n, q, l, x)?;
    let mut row = cycle_row(format!("({n},{q},{l},{x}),m={m}"), m, k, f, g, s)?;
    tang_caveats(&mut row, n, l);
    Ok(row)
}

#[cfg(test)]
mod tests {
    use num::ToPrimitive;

    use super::*;
    use crate::combinators::{cycle_product, star_product};
    use crate::families::{disjoint_union_coloring, intersection_t_coloring, restricted_combined_family};

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    fn u(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn restricted_family_rows() {
        let row = ex3_params(10, 1, 5, 1).unwrap();
        assert_eq!((row.k.clone(), row.f.clone()), (Some(u(90)), Some(u(210))));
        assert_eq!(row.rate, Some(r(6, 1)));
        assert_eq!(row.one_minus_ratio, Some(r(1, 3)));

        let row = ex3_params(4, 1, 2, 1).unwrap();
        assert_eq!(row.k, Some(u(12)));
        assert_eq!(row.one_minus_ratio, Some(r(1, 2)));
        assert_eq!(row.f, Some(u(4)));
        assert_eq!(row.rate, Some(r(3, 1)));
        assert!(row.matches_params(&restricted_combined_family(4, 1, 2, 1).unwrap().params().unwrap()));

        for (n, a, b) in [(4, 1, 2), (5, 2, 2), (6, 1, 3)] {
            let p = restricted_combined_family(n, a, b, 0).unwrap().params().unwrap();
            assert!(ex3_params(n as u64, a as u64, b as u64, 0).unwrap().matches_params(&p));
        }
        assert!(ex3_params(4, 1, 2, 2).is_err());
    }

    #[test]
    fn intersection_product_rows() {
        let side = IntersectionSide { n: 8, a: 4, b: 2, t: 1 };
        let row = ex42_params(side, side).unwrap();
        assert_eq!(row.k, Some(u(784)));
        assert_eq!(row.f, Some(u(4900)));
        assert_eq!(row.rate, Some(r(16, 1)));

        let tiny = IntersectionSide { n: 4, a: 2, b: 2, t: 1 };
        let g = intersection_t_coloring(4, 2, 2, 1).unwrap();
        let measured = star_product(&[g.clone(), g]).unwrap().to_pda().unwrap().params().unwrap();
        assert!(ex42_params(tiny, tiny).unwrap().matches_params(&measured));

        let diag = IntersectionSide { n: 5, a: 2, b: 2, t: 2 };
        let row = ex42_params(diag, diag).unwrap();
        assert_eq!(row.k, row.f);
    }

    #[test]
    fn cycle_rows_match_constructions() {
        let row = ex50_params(4, 1, 2, 6).unwrap();
        assert_eq!(row.one_minus_ratio, Some(r(1, 4)));
        assert_eq!(row.rate, Some(r(4, 3)));
        for (n, a, b) in [(4, 1, 2), (5, 1, 2), (5, 2, 1)] {
            let base = disjoint_union_coloring(n, a, b).unwrap();
            for m in [3, 6] {
                let measured = cycle_product(&base, m).unwrap().to_pda().unwrap().params().unwrap();
                assert!(ex50_params(n.into(), a.into(), b.into(), m as u64).unwrap().matches_params(&measured));
            }
        }
        assert!(ex50_params(4, 1, 2, 4).is_err());
    }

    #[test]
    fn tang_rows() {
        let row = tang_params(24, 2, 17, 3).unwrap();
        assert_eq!(row.f, Some(u(1 << 19)));
        assert_eq!(row.rate, Some(r(3, 4)));
        assert_eq!(row.one_minus_ratio, Some(r(3, 8)));
        assert_eq!(row.k, Some(u(48)));

        let row = tang_cycle_params(4, 2, 5, 3, 6).unwrap();
        assert_eq!(row.f, Some(u(3 << 7)));
        assert_eq!(row.rate, Some(r(2, 1)));
        assert_eq!(row.one_minus_ratio, Some(r(3, 8)));
        assert!(row.caveats.contains(&"range:n<=l".to_string()));

        assert_eq!(minimal_x(60, 44), 3);
        assert_eq!(tang_params(60, 2, 44, 4), Err(AnalyticsError::XNotMinimal { x: 4, minimal: 3 }));
        assert_eq!(tang_params(24, 6, 17, 3), Err(AnalyticsError::NotPrimePower(6)));
        assert!(tang_params(24, 9, 17, 3).is_ok());
    }

    #[test]
    fn estimate_is_annotation_only() {
        let row = ex42_params(IntersectionSide { n: 8, a: 4, b: 2, t: 1 }, IntersectionSide { n: 8, a: 4, b: 2, t: 1 })
            .unwrap();
        let exact = row.f.unwrap().to_f64().unwrap();
        assert!((row.f_estimate.unwrap() - exact).abs() / exact < 0.10);
    }
}
