//! Dense polynomials over the rationals, used internally to store the
//! normal-form swap expansions of the collection engine and the
//! exponentiation curves of group elements.

use crate::scalar::Rational;
use num_traits::Zero;

/// Univariate polynomial, coefficients ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly {
    pub coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    #[cfg(test)]
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Interpolates through `(x_i, y_i)` with distinct nodes (Newton form,
    /// exact).
    pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> UniPoly {
        assert_eq!(xs.len(), ys.len());
        let n = xs.len();
        // divided differences
        let mut dd: Vec<Rational> = ys.to_vec();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = &dd[i] - &dd[i - 1];
                let den = &xs[i] - &xs[i - level];
                dd[i] = num / den;
            }
        }
        // expand Newton form to monomial coefficients
        let mut coeffs = vec![Rational::zero(); n];
        let mut basis = vec![Rational::from_integer(1.into())];
        for (i, d) in dd.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                coeffs[j] = &coeffs[j] + d * b;
            }
            if i + 1 < n {
                // basis *= (x - xs[i])
                let mut next = vec![Rational::zero(); basis.len() + 1];
                for (j, b) in basis.iter().enumerate() {
                    next[j + 1] = &next[j + 1] + b;
                    next[j] = &next[j] - &xs[i] * b;
                }
                basis = next;
            }
        }
        // trim
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }
}

/// Bivariate polynomial, `coeffs[i][j]` the coefficient of `s^i t^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiPoly {
    pub coeffs: Vec<Vec<Rational>>,
}

impl BiPoly {
    pub fn eval(&self, s: &Rational, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for row in self.coeffs.iter().rev() {
            let mut inner = Rational::zero();
            for c in row.iter().rev() {
                inner = inner * t + c;
            }
            acc = acc * s + inner;
        }
        acc
    }

    /// Interpolates on the grid `nodes x nodes` from `values[i][j] =
    /// f(nodes[i], nodes[j])`.
    pub fn interpolate_grid(nodes: &[Rational], values: &[Vec<Rational>]) -> BiPoly {
        let n = nodes.len();
        assert_eq!(values.len(), n);
        // interpolate along t for each fixed s node, then along s per
        // t-coefficient
        let rows: Vec<UniPoly> = values
            .iter()
            .map(|row| UniPoly::interpolate(nodes, row))
            .collect();
        let max_t = rows.iter().map(|p| p.coeffs.len()).max().unwrap_or(0);
        let mut coeffs: Vec<Vec<Rational>> = Vec::new();
        let mut cols: Vec<UniPoly> = Vec::new();
        for j in 0..max_t {
            let col: Vec<Rational> = rows
                .iter()
                .map(|p| p.coeffs.get(j).cloned().unwrap_or_else(Rational::zero))
                .collect();
            cols.push(UniPoly::interpolate(nodes, &col));
        }
        let max_s = cols.iter().map(|p| p.coeffs.len()).max().unwrap_or(0);
        for i in 0..max_s {
            let mut row = Vec::with_capacity(max_t);
            for col in cols.iter() {
                row.push(col.coeffs.get(i).cloned().unwrap_or_else(Rational::zero));
            }
            coeffs.push(row);
        }
        BiPoly { coeffs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat_i64, rat_int};

    #[test]
    fn interpolate_univariate() {
        // f(x) = x^2/2 - 3x + 1
        let f = |x: &Rational| x * x * rat_i64(1, 2) - x * rat_int(3) + rat_int(1);
        let xs: Vec<Rational> = (0..4).map(rat_int).collect();
        let ys: Vec<Rational> = xs.iter().map(f).collect();
        let p = UniPoly::interpolate(&xs, &ys);
        for k in -5..10 {
            let x = rat_int(k);
            assert_eq!(p.eval(&x), f(&x));
        }
        assert_eq!(p.coeffs.len(), 3);
    }

    #[test]
    fn interpolate_bivariate() {
        // f(s,t) = s t^2 - 2 s^2 + t/3
        let f = |s: &Rational, t: &Rational| s * t * t - s * s * rat_int(2) + t * rat_i64(1, 3);
        let nodes: Vec<Rational> = (0..4).map(rat_int).collect();
        let values: Vec<Vec<Rational>> = nodes
            .iter()
            .map(|s| nodes.iter().map(|t| f(s, t)).collect())
            .collect();
        let p = BiPoly::interpolate_grid(&nodes, &values);
        for a in -3..6 {
            for b in -3..6 {
                let (s, t) = (rat_i64(a, 2), rat_i64(b, 3));
                assert_eq!(p.eval(&s, &t), f(&s, &t));
            }
        }
    }

    #[test]
    fn zero_polynomials() {
        let xs: Vec<Rational> = (0..3).map(rat_int).collect();
        let ys = vec![rat_int(0), rat_int(0), rat_int(0)];
        let p = UniPoly::interpolate(&xs, &ys);
        assert!(p.is_zero());
    }
}
