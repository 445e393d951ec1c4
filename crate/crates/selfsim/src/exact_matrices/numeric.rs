use crate::exact_algebra::CBall;

/// Matrix of certified complex balls (imaginary parts of real matrices are
/// enclosed around zero).
#[derive(Clone, Debug)]
pub struct NumericMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<CBall>,
}

impl NumericMatrix {
    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> CBall) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        NumericMatrix { rows, cols, data }
    }

    pub fn get(&self, i: usize, j: usize) -> &CBall {
        &self.data[i * self.cols + j]
    }

    pub fn mul(&self, o: &NumericMatrix) -> NumericMatrix {
        assert_eq!(self.cols, o.rows);
        NumericMatrix::from_fn(self.rows, o.cols, |i, j| {
            let bits = self.get(0, 0).bits;
            (0..self.cols).fold(CBall::from_int(0, bits), |acc, k| acc.add(&self.get(i, k).mul(o.get(k, j))))
        })
    }

    /// Real parts as f64 plus a per-entry absolute error bound covering the
    /// ball radius, the imaginary part and the f64 rounding.
    pub fn to_f64_with_error(&self) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
        let mut vals = vec![vec![0.0; self.cols]; self.rows];
        let mut errs = vec![vec![0.0; self.cols]; self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let b = self.get(i, j);
                let v = b.re_f64();
                vals[i][j] = v;
                errs[i][j] = b.rad_f64() + b.im_f64().abs() + v.abs() * f64::EPSILON;
            }
        }
        (vals, errs)
    }

    /// Largest entry error bound.
    pub fn max_radius(&self) -> f64 {
        self.data.iter().map(|b| b.rad_f64()).fold(0.0, f64::max)
    }
}
