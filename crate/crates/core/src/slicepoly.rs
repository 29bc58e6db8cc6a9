//! Slice polyanalytic functions in coefficient form Σ_k Σ_j q̄^k q^j α_{k,j}.

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::algebra::combinat::factorial;
use crate::algebra::{ExactQuat, ExactScalar};
use crate::error::{Error, Result};
use crate::ncpoly::{expand_qbar_q, NCPoly};

/// Slice regular polynomial Σ q^j α_j with trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SliceSeries {
    coeffs: Vec<ExactQuat>,
}

impl SliceSeries {
    pub fn new(mut coeffs: Vec<ExactQuat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        SliceSeries { coeffs }
    }

    pub fn zero() -> Self {
        SliceSeries::default()
    }

    /// q^j·α.
    pub fn monomial(j: usize, alpha: ExactQuat) -> Self {
        let mut c = vec![ExactQuat::zero(); j + 1];
        c[j] = alpha;
        SliceSeries::new(c)
    }

    pub fn coeffs(&self) -> &[ExactQuat] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> ExactQuat {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    /// Degree of the highest nonzero coefficient, −1 for zero.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn truncate(&self, j_max: usize) -> SliceSeries {
        SliceSeries::new(self.coeffs.iter().take(j_max + 1).cloned().collect())
    }

    pub fn add(&self, other: &SliceSeries) -> SliceSeries {
        let n = self.coeffs.len().max(other.coeffs.len());
        SliceSeries::new((0..n).map(|j| &self.coeff(j) + &other.coeff(j)).collect())
    }

    pub fn scale(&self, s: &ExactScalar) -> SliceSeries {
        SliceSeries::new(self.coeffs.iter().map(|c| c.scale(s)).collect())
    }

    pub fn mul_right(&self, lambda: &ExactQuat) -> SliceSeries {
        SliceSeries::new(self.coeffs.iter().map(|c| c * lambda).collect())
    }

    /// ∂_S Σ q^j α_j = Σ j q^{j−1} α_j.
    pub fn slice_derivative(&self) -> SliceSeries {
        SliceSeries::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c.scale(&ExactScalar::int(j as i64)))
                .collect(),
        )
    }

    /// Cauchy product (f*g)_m = Σ_{a+b=m} α_a β_b.
    pub fn star_product(&self, other: &SliceSeries) -> SliceSeries {
        if self.is_zero() || other.is_zero() {
            return SliceSeries::zero();
        }
        let mut out = vec![ExactQuat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (a, ca) in self.coeffs.iter().enumerate() {
            for (b, cb) in other.coeffs.iter().enumerate() {
                out[a + b] = &out[a + b] + &(ca * cb);
            }
        }
        SliceSeries::new(out)
    }

    pub fn to_ncpoly(&self) -> NCPoly {
        let mut out = NCPoly::zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.add_assign_ref(&expand_qbar_q(0, j as u32).mul_right(c));
            }
        }
        out
    }
}

/// Coefficient array α_{k,j}, k = 0..order−1, j = 0..trunc, of Σ q̄^k q^j α_{k,j}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceCoeffMatrix {
    order: usize,
    trunc: usize,
    alpha: Vec<Vec<ExactQuat>>,
}

impl SliceCoeffMatrix {
    /// Zero matrix of the given order (n+1 ≥ 1) and truncation degree.
    pub fn zeros(order: usize, trunc: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::Domain("order must be at least 1".into()));
        }
        Ok(SliceCoeffMatrix {
            order,
            trunc,
            alpha: vec![vec![ExactQuat::zero(); trunc + 1]; order],
        })
    }

    /// q̄^k q^j α embedded at the given order.
    pub fn monomial(order: usize, k: usize, j: usize, alpha: ExactQuat) -> Result<Self> {
        if k >= order {
            return Err(Error::Index(format!("row {k} outside order {order}")));
        }
        let mut m = Self::zeros(order, j)?;
        m.alpha[k][j] = alpha;
        Ok(m)
    }

    pub fn from_rows(order: usize, trunc: usize, alpha: Vec<Vec<ExactQuat>>) -> Result<Self> {
        if order == 0 {
            return Err(Error::Domain("order must be at least 1".into()));
        }
        if alpha.len() != order {
            return Err(Error::Index(format!("expected {order} rows, got {}", alpha.len())));
        }
        if let Some(r) = alpha.iter().position(|row| row.len() != trunc + 1) {
            return Err(Error::Index(format!("row {r} does not have {} entries", trunc + 1)));
        }
        Ok(SliceCoeffMatrix { order, trunc, alpha })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The polyanalytic index n = order − 1.
    pub fn n(&self) -> usize {
        self.order - 1
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn get(&self, k: usize, j: usize) -> ExactQuat {
        self.alpha
            .get(k)
            .and_then(|row| row.get(j))
            .cloned()
            .unwrap_or_default()
    }

    pub fn set(&mut self, k: usize, j: usize, value: ExactQuat) -> Result<()> {
        if k >= self.order || j > self.trunc {
            return Err(Error::Index(format!("({k},{j}) outside {}x{}", self.order, self.trunc + 1)));
        }
        self.alpha[k][j] = value;
        Ok(())
    }

    pub fn rows(&self) -> &[Vec<ExactQuat>] {
        &self.alpha
    }

    /// Row k as the slice regular component f_k.
    pub fn row(&self, k: usize) -> SliceSeries {
        SliceSeries::new(self.alpha.get(k).cloned().unwrap_or_default())
    }

    /// Same function at a larger order or truncation.
    pub fn embed(&self, order: usize, trunc: usize) -> Result<Self> {
        if order < self.order || trunc < self.trunc {
            return Err(Error::Domain("embedding must not shrink the matrix".into()));
        }
        let mut m = Self::zeros(order, trunc)?;
        for (k, row) in self.alpha.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                m.alpha[k][j] = c.clone();
            }
        }
        Ok(m)
    }

    /// f + g·λ at the common (max) shape.
    pub fn add_scaled(&self, g: &SliceCoeffMatrix, lambda: &ExactQuat) -> Result<Self> {
        let order = self.order.max(g.order);
        let trunc = self.trunc.max(g.trunc);
        let mut out = self.embed(order, trunc)?;
        for k in 0..g.order {
            for j in 0..=g.trunc {
                out.alpha[k][j] = &out.alpha[k][j] + &(&g.alpha[k][j] * lambda);
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.iter().flatten().all(|c| c.is_zero())
    }

    pub fn to_ncpoly(&self) -> NCPoly {
        let mut out = NCPoly::zero();
        for (k, row) in self.alpha.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out.add_assign_ref(&expand_qbar_q(k as u32, j as u32).mul_right(c));
                }
            }
        }
        out
    }

    /// V^n f = 2^n n! f_n for an order-(n+1) matrix.
    pub fn global_v_power(&self) -> SliceSeries {
        let n = self.n();
        let c = BigInt::from(2).pow(n as u32) * factorial(n as u64);
        self.row(n).scale(&ExactScalar::bigint(c))
    }

    /// True iff every row k ≥ m vanishes.
    pub fn order_check(&self, m: usize) -> bool {
        self.alpha
            .iter()
            .skip(m)
            .all(|row| row.iter().all(|c| c.is_zero()))
    }

    pub fn to_json(&self) -> Value {
        let alpha: Vec<Value> = self
            .alpha
            .iter()
            .map(|row| Value::Array(row.iter().map(|c| c.to_json()).collect()))
            .collect();
        json!({"order": self.order, "trunc": self.trunc, "alpha": alpha})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let order = v
            .get("order")
            .and_then(|o| o.as_u64())
            .filter(|o| *o >= 1)
            .ok_or_else(|| Error::schema("order", "expected an integer ≥ 1"))? as usize;
        let trunc = v
            .get("trunc")
            .and_then(|t| t.as_u64())
            .ok_or_else(|| Error::schema("trunc", "expected a non-negative integer"))? as usize;
        let rows = v
            .get("alpha")
            .and_then(|a| a.as_array())
            .ok_or_else(|| Error::schema("alpha", "expected a list of rows"))?;
        if rows.len() != order {
            return Err(Error::schema("alpha", format!("expected {order} rows, found {}", rows.len())));
        }
        let mut alpha = Vec::with_capacity(order);
        for (k, row) in rows.iter().enumerate() {
            let path = format!("alpha[{k}]");
            let row = row
                .as_array()
                .ok_or_else(|| Error::schema(&path, "expected a list of quaternions"))?;
            if row.len() != trunc + 1 {
                return Err(Error::schema(
                    &path,
                    format!("expected {} entries, found {}", trunc + 1, row.len()),
                ));
            }
            let parsed = row
                .iter()
                .enumerate()
                .map(|(j, c)| ExactQuat::from_json(c, &format!("alpha[{k}][{j}]")))
                .collect::<Result<Vec<_>>>()?;
            alpha.push(parsed);
        }
        Self::from_rows(order, trunc, alpha)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_matrix(order: usize, k: usize, j: usize) -> SliceCoeffMatrix {
        SliceCoeffMatrix::monomial(order, k, j, ExactQuat::one()).unwrap()
    }

    #[test]
    fn to_ncpoly_examples() {
        assert_eq!(unit_matrix(1, 0, 1).to_ncpoly(), NCPoly::q());
        assert_eq!(unit_matrix(2, 1, 1).to_ncpoly(), *expand_qbar_q(1, 1));
        assert!(SliceCoeffMatrix::zeros(3, 4).unwrap().to_ncpoly().is_zero());
    }

    #[test]
    fn slice_derivative_examples() {
        let q3 = SliceSeries::monomial(3, ExactQuat::one());
        assert_eq!(q3.slice_derivative(), SliceSeries::monomial(2, ExactQuat::from_ints(3, 0, 0, 0)));
        assert!(SliceSeries::monomial(0, ExactQuat::one()).slice_derivative().is_zero());
        let a = ExactQuat::from_ints(0, 1, 1, 0);
        let f = SliceSeries::monomial(2, a.clone());
        assert_eq!(f.slice_derivative(), SliceSeries::monomial(1, a.scale(&2.into())));
    }

    #[test]
    fn star_product_examples() {
        let q = SliceSeries::monomial(1, ExactQuat::one());
        assert_eq!(q.star_product(&q), SliceSeries::monomial(2, ExactQuat::one()));
        let qi = SliceSeries::monomial(1, ExactQuat::i());
        let qj = SliceSeries::monomial(1, ExactQuat::j());
        assert_eq!(qi.star_product(&qj), SliceSeries::monomial(2, ExactQuat::k()));
        let one = SliceSeries::monomial(0, ExactQuat::one());
        assert_eq!(qi.star_product(&one), qi);
    }

    #[test]
    fn v_power_examples() {
        let f = unit_matrix(1, 0, 3);
        assert_eq!(f.global_v_power(), f.row(0));
        let g = unit_matrix(2, 1, 2);
        assert_eq!(g.global_v_power(), SliceSeries::monomial(2, ExactQuat::from_ints(2, 0, 0, 0)));
        let h = unit_matrix(3, 1, 2);
        assert!(h.global_v_power().is_zero());
    }

    #[test]
    fn order_check_examples() {
        let f = unit_matrix(2, 1, 1);
        assert!(f.order_check(2));
        assert!(!f.order_check(1));
    }

    #[test]
    fn json_schema_errors_name_fields() {
        let f = unit_matrix(2, 1, 2);
        assert_eq!(SliceCoeffMatrix::from_json(&f.to_json()).unwrap(), f);
        let mut v = f.to_json();
        v["alpha"][1] = json!([]);
        let e = SliceCoeffMatrix::from_json(&v).unwrap_err();
        assert!(e.to_string().contains("alpha[1]"), "{e}");
        let e = SliceCoeffMatrix::from_json(&json!({"trunc": 0, "alpha": []})).unwrap_err();
        assert!(e.to_string().contains("`order`"), "{e}");
    }
}
