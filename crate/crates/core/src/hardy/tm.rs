use serde::{Deserialize, Serialize};

use crate::quat::Quaternion;
use crate::series::SliceSeries;

use super::{blaschke_factor, inner_product, szego_kernel, BallPoint};

/// Takenaka–Malmquist system for parameters `a_1, ..., a_n`:
/// `B_1 = 1`, `B_{k+1} = B_k * B_{a_k}`, `T_k = B_k * e_{a_k}`.
///
/// Serialized as its parameters and order only; the series are rebuilt on load.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "TmRepr", into = "TmRepr")]
pub struct TmSystem {
    params: Vec<BallPoint>,
    order: usize,
    /// `B_1 ..= B_{n+1}`; one longer than `params`.
    partial_products: Vec<SliceSeries>,
    tm_functions: Vec<SliceSeries>,
}

#[derive(Serialize, Deserialize)]
struct TmRepr {
    params: Vec<BallPoint>,
    trunc_order: usize,
}

impl From<TmRepr> for TmSystem {
    fn from(r: TmRepr) -> Self {
        TmSystem::new(&r.params, r.trunc_order)
    }
}

impl From<TmSystem> for TmRepr {
    fn from(t: TmSystem) -> Self {
        TmRepr {
            params: t.params,
            trunc_order: t.order,
        }
    }
}

impl TmSystem {
    pub fn empty(order: usize) -> Self {
        TmSystem {
            params: Vec::new(),
            order,
            partial_products: vec![SliceSeries::one(order)],
            tm_functions: Vec::new(),
        }
    }

    pub fn new(params: &[BallPoint], order: usize) -> Self {
        let mut tm = TmSystem::empty(order);
        for &a in params {
            tm.push(a);
        }
        tm
    }

    /// Appends `a` and returns the new `T_n`.
    pub fn push(&mut self, a: BallPoint) -> &SliceSeries {
        let b = self.partial_products.last().expect("B_1 always present");
        let t = b.star_mul(&szego_kernel(a, self.order));
        let next = b.star_mul(&blaschke_factor(a, self.order));
        self.params.push(a);
        self.tm_functions.push(t);
        self.partial_products.push(next);
        self.tm_functions.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.params.is_empty()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn params(&self) -> &[BallPoint] {
        &self.params
    }

    pub fn tm_functions(&self) -> &[SliceSeries] {
        &self.tm_functions
    }

    /// `B_1, ..., B_{n+1}`, where `B_{n+1}` is the product of all `n` factors.
    pub fn partial_products(&self) -> &[SliceSeries] {
        &self.partial_products
    }

    /// Product of all factors so far.
    pub fn blaschke(&self) -> &SliceSeries {
        self.partial_products.last().unwrap()
    }

    /// `G[k][l] = ⟨T_k, T_l⟩`.
    pub fn gram(&self) -> Vec<Vec<Quaternion>> {
        let t = &self.tm_functions;
        t.iter()
            .map(|tk| t.iter().map(|tl| inner_product(tk, tl)).collect())
            .collect()
    }

    /// Largest componentwise deviation of the Gram matrix from the identity.
    pub fn gram_deviation(&self) -> f64 {
        let g = self.gram();
        let mut worst = 0.0f64;
        for (k, row) in g.iter().enumerate() {
            for (l, &v) in row.iter().enumerate() {
                let want = if k == l { Quaternion::ONE } else { Quaternion::ZERO };
                worst = worst.max(v.max_abs_diff(want));
            }
        }
        worst
    }
}
