use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{format_rat, QuadNum, Rat};
use crate::error::{Error, Result};

/// Univariate polynomial with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<Rat>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `t^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, t: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * t + c)
    }

    /// Horner evaluation at a quadratic number; `t` fixes the radicand.
    pub fn eval_quad(&self, t: &QuadNum) -> QuadNum {
        self.coeffs
            .iter()
            .rev()
            .fold(QuadNum::zero(), |acc, c| (&acc * t).add_rat(c))
    }

    /// All real roots in increasing order, computed exactly.
    pub fn roots_quadratic(&self) -> Result<Vec<QuadNum>> {
        match self.degree() {
            None => Err(Error::ZeroPolynomial),
            Some(0) => Ok(Vec::new()),
            Some(1) => Ok(vec![QuadNum::from_rat(-&self.coeffs[0] / &self.coeffs[1])]),
            Some(2) => {
                let (c, b, a) = (&self.coeffs[0], &self.coeffs[1], &self.coeffs[2]);
                let disc = b * b - Rat::from_integer(BigInt::from(4)) * a * c;
                if disc.is_negative() {
                    return Ok(Vec::new());
                }
                let two_a = a + a;
                let vertex = -b / &two_a;
                if disc.is_zero() {
                    return Ok(vec![QuadNum::from_rat(vertex)]);
                }
                let half_width = QuadNum::sqrt_rat(&disc)?.div_rat(&two_a);
                let x1 = (-&half_width).add_rat(&vertex);
                let x2 = half_width.add_rat(&vertex);
                let mut roots = vec![x1, x2];
                roots.sort();
                Ok(roots)
            }
            Some(d) => Err(Error::DegreeTooHigh(d)),
        }
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            first = false;
            let body = match (k, mag.is_one()) {
                (0, _) => format_rat(&mag),
                (1, true) => "t".to_string(),
                (1, false) => format!("{}t", format_rat(&mag)),
                (_, true) => format!("t^{}", k),
                (_, false) => format!("{}t^{}", format_rat(&mag), k),
            };
            write!(f, "{}", body)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};

    fn poly(c: &[i64]) -> RatPoly {
        RatPoly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn roots_of_the_boundary_quadratic() {
        // 2t^2 + 2t - 1
        let p = poly(&[-1, 2, 2]);
        let roots = p.roots_quadratic().unwrap();
        let lo = QuadNum::new(rat(-1, 2), rat(-1, 2), BigInt::from(3)).unwrap();
        let hi = QuadNum::new(rat(-1, 2), rat(1, 2), BigInt::from(3)).unwrap();
        assert_eq!(roots, vec![lo, hi]);
        for r in &roots {
            assert!(p.eval_quad(r).is_zero());
        }
    }

    #[test]
    fn degenerate_cases() {
        assert_eq!(
            poly(&[0, 0, 1]).roots_quadratic().unwrap(),
            vec![QuadNum::zero()]
        );
        assert_eq!(
            poly(&[-1, 2]).roots_quadratic().unwrap(),
            vec![QuadNum::from_rat(rat(1, 2))]
        );
        assert_eq!(poly(&[1, 0, 1]).roots_quadratic().unwrap(), vec![]);
        assert_eq!(poly(&[3]).roots_quadratic().unwrap(), vec![]);
        assert_eq!(
            RatPoly::zero().roots_quadratic(),
            Err(Error::ZeroPolynomial)
        );
        assert_eq!(
            poly(&[0, 0, 0, 1]).roots_quadratic(),
            Err(Error::DegreeTooHigh(3))
        );
    }

    #[test]
    fn negative_leading_coefficient_orders_roots() {
        // -(t - 1)(t - 3)
        let roots = poly(&[-3, 4, -1]).roots_quadratic().unwrap();
        assert_eq!(
            roots,
            vec![QuadNum::from_rat(int(1)), QuadNum::from_rat(int(3))]
        );
    }

    #[test]
    fn trims_and_displays() {
        let p = RatPoly::new(vec![int(-1), int(2), int(2), int(0)]);
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.to_string(), "2t^2 + 2t - 1");
        assert_eq!(poly(&[0, -1]).to_string(), "-t");
        assert_eq!(
            RatPoly::new(vec![rat(1, 2), int(0), int(-3)]).to_string(),
            "-3t^2 + 1/2"
        );
    }
}
