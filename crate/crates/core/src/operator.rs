//! Polynomial differential operators acting on the thermal kernel.
//!
//! A [`CothOperator`] represents `y^p Σ_j a_j y^j ∂_y^j C(y)`. The free
//! energies are operators with `p = 1`; their entropies are the exact
//! derivative operators, obtained symbolically by [`CothOperator::derivative`].
//!
//! Entropies vanish like `y³` near the origin while each kernel term grows
//! like `1/y`, so for `y` below [`OPERATOR_SWITCHOVER`] the operator is
//! evaluated from the Laurent coefficients of `C` pushed through the
//! operator. The pole terms then cancel exactly in the coefficients rather
//! than in floating point.

use crate::error::{Error, Result};
use crate::kernel::{coth_kernel, falling_factorial, BERNOULLI_RATIOS, MAX_ORDER};

/// Below this value of `y` operators are summed from their series.
pub const OPERATOR_SWITCHOVER: f64 = 2.0;

const ORDERS: usize = MAX_ORDER + 1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CothOperator {
    power: i32,
    coeffs: [f64; ORDERS],
}

impl CothOperator {
    /// `y^power Σ_j coeffs[j] y^j ∂^j C`. Unused orders must be zero.
    pub const fn new(power: i32, coeffs: [f64; ORDERS]) -> Self {
        Self { power, coeffs }
    }

    pub fn power(&self) -> i32 {
        self.power
    }

    pub fn coeffs(&self) -> &[f64; ORDERS] {
        &self.coeffs
    }

    /// The operator for `d/dy` of this one.
    ///
    /// # Panics
    /// If the result would need a kernel derivative above order five.
    pub fn derivative(&self) -> Self {
        assert!(
            self.coeffs[MAX_ORDER] == 0.0,
            "derivative needs C of order {}",
            MAX_ORDER + 1
        );
        let mut coeffs = [0.0; ORDERS];
        for j in 0..ORDERS {
            let own = f64::from(self.power + j as i32) * self.coeffs[j];
            let lower = if j > 0 { self.coeffs[j - 1] } else { 0.0 };
            coeffs[j] = own + lower;
        }
        Self {
            power: self.power - 1,
            coeffs,
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut coeffs = self.coeffs;
        coeffs.iter_mut().for_each(|a| *a *= factor);
        Self {
            power: self.power,
            coeffs,
        }
    }

    /// Sum of two operators with the same prefactor power.
    pub fn plus(&self, other: &Self) -> Self {
        assert_eq!(self.power, other.power, "prefactor powers differ");
        let mut coeffs = self.coeffs;
        for (a, b) in coeffs.iter_mut().zip(other.coeffs.iter()) {
            *a += b;
        }
        Self {
            power: self.power,
            coeffs,
        }
    }

    /// Coefficient multiplying `B_{2k}/(2k)!` in the series, before the
    /// power of `y` is attached.
    fn series_weight(&self, k: usize) -> f64 {
        let n = 2 * k as i32 - 1;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, a)| a * falling_factorial(n, j))
            .sum()
    }

    /// Coefficient of `y^n` in the small-`y` expansion; zero for powers that
    /// do not occur.
    pub fn series_coefficient(&self, n: i32) -> f64 {
        // Powers present are 2k - 1 + p.
        let twice_k = n + 1 - self.power;
        if twice_k < 0 || twice_k % 2 != 0 {
            return 0.0;
        }
        let k = (twice_k / 2) as usize;
        if k >= BERNOULLI_RATIOS.len() {
            return 0.0;
        }
        BERNOULLI_RATIOS[k] * self.series_weight(k)
    }

    /// Value at `y = 0`, defined when the expansion has no negative powers.
    pub fn value_at_zero(&self) -> Result<f64> {
        if self.power < 1 && self.series_weight(0) != 0.0 {
            return Err(Error::Domain("operator is singular at y = 0".into()));
        }
        Ok(self.series_coefficient(0))
    }

    /// Series branch, valid for `|y| < 2π`; accurate for `y ≤ 2`.
    pub fn eval_series(&self, y: f64) -> f64 {
        self.sum_series(y, None)
    }

    fn sum_series(&self, y: f64, skip: Option<usize>) -> f64 {
        (0..BERNOULLI_RATIOS.len()).rev().fold(0.0, |acc, k| {
            let weight = self.series_weight(k);
            if weight == 0.0 || skip == Some(k) {
                acc
            } else {
                let n = 2 * k as i32 - 1 + self.power;
                acc + BERNOULLI_RATIOS[k] * weight * y.powi(n)
            }
        })
    }

    /// Closed-form branch through [`coth_kernel`].
    pub fn eval_closed(&self, y: f64) -> Result<f64> {
        let kernel = coth_kernel(y)?;
        let mut acc = 0.0;
        let mut y_pow = 1.0;
        for (j, a) in self.coeffs.iter().enumerate() {
            if *a != 0.0 {
                acc += a * y_pow * kernel.c[j];
            }
            y_pow *= y;
        }
        Ok(acc * y.powi(self.power))
    }

    /// Evaluates the operator at `y ≥ 0`, using the exact limit at `y = 0`.
    pub fn eval(&self, y: f64) -> Result<f64> {
        if !y.is_finite() || y < 0.0 {
            return Err(Error::Domain(format!("y must be finite and >= 0, got {y}")));
        }
        if y == 0.0 {
            self.value_at_zero()
        } else if y < OPERATOR_SWITCHOVER {
            Ok(self.eval_series(y))
        } else {
            self.eval_closed(y)
        }
    }

    /// `eval(y) - eval(0)`, computed without cancelling the constant term.
    pub fn eval_thermal(&self, y: f64) -> Result<f64> {
        let at_zero = self.value_at_zero()?;
        if !y.is_finite() || y < 0.0 {
            return Err(Error::Domain(format!("y must be finite and >= 0, got {y}")));
        }
        if y == 0.0 {
            return Ok(0.0);
        }
        if y < OPERATOR_SWITCHOVER {
            // The constant is the k-th term with 2k - 1 + p = 0.
            let twice_k = 1 - self.power;
            let skip = (twice_k >= 0 && twice_k % 2 == 0).then_some((twice_k / 2) as usize);
            Ok(self.sum_series(y, skip))
        } else {
            Ok(self.eval_closed(y)? - at_zero)
        }
    }
}

/// Leading small-`y` behaviour `c3 y³ + c5 y⁵ + O(y⁷)` of an entropy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmallYExpansion {
    pub c3: f64,
    pub c5: f64,
}

impl SmallYExpansion {
    pub fn of(op: &CothOperator) -> Self {
        Self {
            c3: op.series_coefficient(3),
            c5: op.series_coefficient(5),
        }
    }

    /// Expansion of `Σ w_b op_b`. The per-operator series weights are
    /// exact, so a coefficient that cancels to within rounding of the
    /// weights is set to zero.
    pub fn combine(terms: &[(f64, CothOperator)]) -> Self {
        let coefficient = |n: i32| {
            let mut sum = 0.0;
            let mut magnitude = 0.0;
            let mut ratio = 0.0;
            for (w, op) in terms {
                let twice_k = n + 1 - op.power;
                if twice_k < 0 || twice_k % 2 != 0 {
                    continue;
                }
                let k = (twice_k / 2) as usize;
                let term = w * op.series_weight(k);
                sum += term;
                magnitude += term.abs();
                ratio = BERNOULLI_RATIOS[k];
            }
            if sum.abs() <= 16.0 * f64::EPSILON * magnitude {
                0.0
            } else {
                ratio * sum
            }
        };
        Self {
            c3: coefficient(3),
            c5: coefficient(5),
        }
    }

    pub fn eval(&self, y: f64) -> f64 {
        y.powi(3) * (self.c3 + self.c5 * y * y)
    }

    /// Minimizer and smallest value of the two-term expansion on
    /// `(0, y_max]`.
    pub fn min_below(&self, y_max: f64) -> (f64, f64) {
        let mut best = (y_max, self.eval(y_max));
        if self.c3 < 0.0 && self.c5 > 0.0 {
            let y = (-3.0 * self.c3 / (5.0 * self.c5)).sqrt();
            if y < y_max && self.eval(y) < best.1 {
                best = (y, self.eval(y));
            }
        }
        best
    }

    /// True when the entropy starts off negative just above `y = 0`.
    pub fn starts_negative(&self) -> bool {
        if self.c3 != 0.0 {
            self.c3 < 0.0
        } else {
            self.c5 < 0.0
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            c3: self.c3 * factor,
            c5: self.c5 * factor,
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        Self {
            c3: self.c3 + other.c3,
            c5: self.c5 + other.c5,
        }
    }
}
