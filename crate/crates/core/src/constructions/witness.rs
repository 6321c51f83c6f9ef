//! Four-matrix induced `P4` patterns in `SL(3,q)` and `SU(3,q)`.

use thiserror::Error;

use super::field::{Field, FieldElement, FieldError, Matrix3};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("no witness for q = {0}")]
    BadQ(u32),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Commutation data for `g1..g4`, computed from the matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternReport {
    /// `commutes[i][j]` iff `gi gj = gj gi`.
    pub commutes: [[bool; 4]; 4],
    /// `projective[i][j]` iff `gi gj` is a scalar multiple of `gj gi`.
    pub projective: [[bool; 4]; 4],
    pub determinants_one: bool,
    /// Some non-generator is scalar (it would be central).
    pub any_scalar: bool,
    /// Form preservation, for the unitary witness only.
    pub hermitian: Option<bool>,
}

impl PatternReport {
    fn compute(field: &Field, g: &[Matrix3; 4], hermitian: Option<bool>) -> Self {
        let mut commutes = [[true; 4]; 4];
        let mut projective = [[true; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let ab = g[i].mul(&g[j], field);
                let ba = g[j].mul(&g[i], field);
                commutes[i][j] = ab == ba;
                projective[i][j] = ab.is_scalar_multiple_of(&ba, field);
            }
        }
        PatternReport {
            commutes,
            projective,
            determinants_one: g.iter().all(|m| m.det(field) == field.one()),
            any_scalar: g.iter().any(|m| m.as_scalar().is_some()),
            hermitian,
        }
    }

    /// The path `g1 ~ g2 ~ g3 ~ g4` is induced, both in the matrix group
    /// and modulo scalars.
    pub fn is_induced_p4(&self) -> bool {
        let edge = |i: usize, j: usize| j == i + 1 || i == j + 1;
        (0..4).all(|i| {
            (0..4).all(|j| {
                i == j
                    || if edge(i, j) {
                        self.commutes[i][j]
                    } else {
                        !self.commutes[i][j] && !self.projective[i][j]
                    }
            })
        })
    }

    pub fn verified(&self) -> bool {
        self.is_induced_p4() && self.determinants_one && !self.any_scalar && self.hermitian != Some(false)
    }
}

#[derive(Debug, Clone)]
pub struct MatrixWitness {
    pub field: Field,
    pub a: FieldElement,
    pub b: FieldElement,
    pub matrices: [Matrix3; 4],
    pub report: PatternReport,
}

/// `g1 = I + E12`, `g2 = diag(a,a,b)`, `g3 = diag(b,a,a)`, `g4 = I + E23`,
/// with `a` the least nonzero code satisfying `a^3 != 1` and `b = a^-2`.
pub fn sl3_p4_witness(q: u32) -> Result<MatrixWitness, WitnessError> {
    let field = Field::new(q)?;
    let a = field
        .elements()
        .skip(1)
        .find(|&x| field.pow(x, 3) != field.one())
        .ok_or(WitnessError::BadQ(q))?;
    let b = field.inv(field.mul(a, a))?;
    let unitriangular = |r: usize, c: usize| {
        let mut m = Matrix3::identity(&field);
        m.entries[r][c] = field.one();
        m
    };
    let matrices = [
        unitriangular(0, 1),
        Matrix3::diag(&field, [a, a, b]),
        Matrix3::diag(&field, [b, a, a]),
        unitriangular(1, 2),
    ];
    let report = PatternReport::compute(&field, &matrices, None);
    Ok(MatrixWitness {
        field,
        a,
        b,
        matrices,
        report,
    })
}

/// Unitary analogue over GF(q^2) for the form `x1^(q+1) + x2^(q+1) + x3^(q+1)`;
/// `a = w^(q-1)` has order `q + 1`.
pub fn su3_p4_witness(q: u32) -> Result<MatrixWitness, WitnessError> {
    if q <= 2 {
        return Err(WitnessError::BadQ(q));
    }
    Field::new(q)?;
    let q2 = q.checked_mul(q).ok_or(FieldError::Unsupported(u32::MAX))?;
    let field = Field::new(q2)?;
    let a = field.pow(field.primitive_element(), (q - 1) as u64);
    if field.pow(a, 3) == field.one() {
        return Err(WitnessError::BadQ(q));
    }
    let b = field.inv(field.mul(a, a))?;
    let (zero, one) = (field.zero(), field.one());
    let m1 = field.neg(one);
    let g1 = Matrix3 {
        entries: [[zero, one, zero], [one, zero, zero], [zero, zero, m1]],
    };
    let g4 = Matrix3 {
        entries: [[m1, zero, zero], [zero, zero, one], [zero, one, zero]],
    };
    let matrices = [
        g1,
        Matrix3::diag(&field, [a, a, b]),
        Matrix3::diag(&field, [b, a, a]),
        g4,
    ];
    let identity = Matrix3::identity(&field);
    let hermitian = matrices
        .iter()
        .all(|m| m.conjugate_transpose(&field, q as u64).mul(m, &field) == identity);
    let report = PatternReport::compute(&field, &matrices, Some(hermitian));
    Ok(MatrixWitness {
        field,
        a,
        b,
        matrices,
        report,
    })
}
