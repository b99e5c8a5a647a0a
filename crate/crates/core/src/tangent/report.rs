use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::ffield::FunctionField;
use super::maps::{
    coordinatize_omega2, even_width, is_zero_matrix, mu0_kernel, mu0_map, mu1_sections,
    mu1_sections_dual, mult_map, omega2_dim, parity_blocks,
};
use crate::curves::CurveModel;
use crate::error::Result;

/// The five dimensions tracked per curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Dims {
    pub mult_rank: usize,
    pub ker_mu0_dim: usize,
    pub im_mu1_dim: usize,
    pub combined_rank: usize,
    pub cokernel_dim: i64,
}

impl Dims {
    /// Predicted values: surjective away from characteristic 2, cokernel
    /// `g − 2` in characteristic 2.
    pub fn expected(g: usize, char2: bool) -> Dims {
        let combined = if char2 { 2 * g - 1 } else { 3 * g - 3 };
        Dims {
            mult_rank: 2 * g - 1,
            ker_mu0_dim: g - 2,
            im_mu1_dim: g - 2,
            combined_rank: combined,
            cokernel_dim: (3 * g - 3 - combined) as i64,
        }
    }
}

/// Side conditions verified alongside the ranks. `None` marks a check that
/// does not apply in this characteristic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Checks {
    pub mu0_cokernel: usize,
    pub kernel_verified: bool,
    pub sign_identity: bool,
    pub scramble_invariant: bool,
    pub containment: Option<bool>,
    pub parity_additive: Option<bool>,
}

impl Checks {
    pub fn all_hold(&self) -> bool {
        self.mu0_cokernel == 0
            && self.kernel_verified
            && self.sign_identity
            && self.scramble_invariant
            && self.containment != Some(false)
            && self.parity_additive != Some(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    #[serde(rename = "char")]
    pub characteristic: String,
    pub field: String,
    pub genus: usize,
    pub observed: Dims,
    pub expected: Dims,
    pub pass: bool,
    pub curve: String,
    pub seed: u64,
    pub checks: Checks,
}

impl RankReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Compute every map for `model` and compare against the predicted
/// dimensions. `seed` drives the random scrambles used for the rank
/// cross-check and is recorded in the report.
pub fn rank_report(model: &CurveModel, seed: u64) -> Result<RankReport> {
    let ctx = model.ctx();
    let g = model.genus();
    let char2 = ctx.is_char2();
    let ff = FunctionField::new(model);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mult = mult_map(&ff)?;
    let mult_rank = mult.rank();

    let mu0 = mu0_map(&ff)?;
    let mu0_rank = mu0.rank();
    let ker = mu0_kernel(&mu0);
    let kernel_verified = ker
        .iter()
        .all(|v| mu0.matrix.left_apply(v).iter().all(|e| e.is_zero()));

    let im = mu1_sections(&ff, &ker)?;
    let mu1 = coordinatize_omega2(&ff, &im)?.matrix;
    let im_mu1_dim = mu1.rank();

    let dual = coordinatize_omega2(&ff, &mu1_sections_dual(&ff, &ker)?)?.matrix;
    let sign_identity = dual == mu1;

    let combined = mult.matrix.vstack(&mu1);
    let combined_rank = combined.rank();

    let scramble_invariant = [
        (&mult.matrix, mult_rank),
        (&mu0.matrix, mu0_rank),
        (&mu1, im_mu1_dim),
        (&combined, combined_rank),
    ]
    .iter()
    .all(|(m, r)| m.scrambled(&mut rng).rank() == *r);

    let containment = char2.then(|| mu1.rows().all(|row| mult.matrix.row_span_contains(row)));
    let parity_additive = (!char2).then(|| {
        let w = even_width(&ff, 2);
        let (mult_even, mult_odd) = parity_blocks(&mult.matrix, w);
        let (mu1_even, mu1_odd) = parity_blocks(&mu1, w);
        let (all_even, all_odd) = parity_blocks(&combined, w);
        is_zero_matrix(&mult_odd)
            && is_zero_matrix(&mu1_even)
            && mult_even.rank() + mu1_odd.rank() == combined_rank
            && all_even.rank() + all_odd.rank() == combined_rank
    });

    let observed = Dims {
        mult_rank,
        ker_mu0_dim: ker.len(),
        im_mu1_dim,
        combined_rank,
        cokernel_dim: omega2_dim(g) as i64 - combined_rank as i64,
    };
    let expected = Dims::expected(g, char2);
    let checks = Checks {
        mu0_cokernel: g - mu0_rank,
        kernel_verified,
        sign_identity,
        scramble_invariant,
        containment,
        parity_additive,
    };
    Ok(RankReport {
        characteristic: ctx.characteristic().to_string(),
        field: ctx.to_string(),
        genus: g,
        observed,
        expected,
        pass: observed == expected && checks.all_hold(),
        curve: model.spec_string(),
        seed,
        checks,
    })
}
