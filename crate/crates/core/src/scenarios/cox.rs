//! Cox's two-instrument example: a coin picks one of two measurements of
//! the same parameter. Compares estimator variance conditional on the coin
//! with the variance over the mixture.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::stat_model::{is_unbiasedly_estimable, StatModel};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoxRow<T> {
    pub parameter: T,
    pub var_given_z1: T,
    pub var_given_z2: T,
    pub var_unconditional: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoxReport<T> {
    pub coin_bias: T,
    /// Unbiased estimator of the parameter in each branch (minimum-norm solution).
    pub estimator_1: Vec<T>,
    pub estimator_2: Vec<T>,
    /// Joint law of `(z, y)`: model 1 outcomes first, then model 2.
    pub mixture_rows: Vec<Vec<T>>,
    pub rows: Vec<CoxRow<T>>,
    /// Largest `|unconditional - conditional on z = 1|` over parameter values.
    pub max_difference: T,
}

fn branch_estimator<T: Scalar>(model: &StatModel<T>) -> Result<Vec<T>> {
    let est = is_unbiasedly_estimable(model.parameters(), model)?;
    est.witness
        .map(|y| y.iter().copied().collect())
        .ok_or_else(|| Error::contract("cox_conditionality_demo", "parameter is not unbiasedly estimable in a branch"))
}

fn second_moment<T: Scalar>(model: &StatModel<T>, y: &[T], lambda: usize) -> T {
    y.iter().enumerate().fold(T::zero(), |acc, (w, v)| acc + model.prob(lambda, w) * *v * *v)
}

pub fn cox_conditionality_demo<T: Scalar>(f1: &StatModel<T>, f2: &StatModel<T>, coin_bias: T) -> Result<CoxReport<T>> {
    const OP: &str = "cox_conditionality_demo";
    if f1.parameters() != f2.parameters() {
        return Err(Error::input(OP, "models are defined on different parameter grids"));
    }
    if !(coin_bias >= T::zero() && coin_bias <= T::one()) {
        return Err(Error::input(OP, "coin bias must lie in [0, 1]"));
    }
    let y1 = branch_estimator(f1)?;
    let y2 = branch_estimator(f2)?;
    let c = coin_bias;
    let mut rows = Vec::new();
    let mut mixture_rows = Vec::new();
    let mut max_difference = T::zero();
    for (i, &lambda) in f1.parameters().iter().enumerate() {
        let m1 = second_moment(f1, &y1, i);
        let m2 = second_moment(f2, &y2, i);
        let sq = lambda * lambda;
        let row = CoxRow {
            parameter: lambda,
            var_given_z1: m1 - sq,
            var_given_z2: m2 - sq,
            var_unconditional: c * m1 + (T::one() - c) * m2 - sq,
        };
        max_difference = max_difference.max((row.var_unconditional - row.var_given_z1).abs());
        rows.push(row);
        let mut joint: Vec<T> = (0..f1.num_outcomes()).map(|w| c * f1.prob(i, w)).collect();
        joint.extend((0..f2.num_outcomes()).map(|w| (T::one() - c) * f2.prob(i, w)));
        mixture_rows.push(joint);
    }
    Ok(CoxReport { coin_bias, estimator_1: y1, estimator_2: y2, mixture_rows, rows, max_difference })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(p: f64) -> StatModel<f64> {
        StatModel::new(vec![0.0, 1.0], vec![vec![1.0 - p, p], vec![p, 1.0 - p]]).unwrap()
    }

    #[test]
    fn identical_models_agree() {
        let r = cox_conditionality_demo(&model(0.2), &model(0.2), 0.5).unwrap();
        assert!(r.max_difference < 1e-12);
    }

    #[test]
    fn sharp_branch_beats_mixture() {
        let r = cox_conditionality_demo(&model(0.05), &model(0.4), 0.5).unwrap();
        for row in &r.rows {
            assert!(row.var_given_z1 < row.var_unconditional);
            assert!(row.var_unconditional < row.var_given_z2);
        }
        let total: f64 = r.mixture_rows[0].iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn certain_coin_is_conditional() {
        let r = cox_conditionality_demo(&model(0.05), &model(0.4), 1.0).unwrap();
        assert!(r.max_difference < 1e-12);
        let other = StatModel::new(vec![0.0, 2.0], vec![vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap();
        assert!(cox_conditionality_demo(&model(0.1), &other, 0.5).is_err());
    }
}
