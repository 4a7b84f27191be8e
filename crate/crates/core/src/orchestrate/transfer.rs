use crate::builder::{closure_check, Figure, Violation};
use crate::error::{Error, Result};
use crate::exactgeom::{
    dual_cone, extreme_filter, image_kernel_basis, in_span, polar_ball, BallRep, ConeRep, HullMode,
    RationalMatrix,
};
use crate::netmodel::{transfer_dual, ReactionNetwork};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualTransfer {
    pub dual: ReactionNetwork,
    /// The matrix whose transpose is the dual's stoichiometric matrix.
    pub gamma: RationalMatrix,
    /// `K*` for a cone, the polar within `Im(Γ)` for a ball.
    pub dual_figure: Figure,
    /// `Γᵀ` applied to `dual_figure`, pruned to extremes.
    pub transferred: Figure,
    /// Closure violations of `transferred` under `dual`; always empty on success.
    pub verification: Vec<Violation>,
}

/// Moves a certified cone `K` (or ball `B`) inside `Im(Γ)` to the dual network as `ΓᵀK*`
/// (or `ΓᵀB*`).
///
/// All-reversible networks dualize to the reversible network with matrix `Γᵀ`; otherwise the
/// irreversible expansion is transposed. Cone generators are reduced to primitive integer
/// vectors; ball vertices are kept as computed.
pub fn dual_transfer(net: &ReactionNetwork, figure: &Figure) -> Result<DualTransfer> {
    let n = net.n_species();
    if figure.ambient_dim() != n {
        return Err(Error::Dimension {
            expected: n,
            got: figure.ambient_dim(),
        });
    }
    let violations = closure_check(figure, net);
    if !violations.is_empty() {
        return Err(Error::InvalidInput(format!(
            "figure is not closed under the network's operations ({} violation(s))",
            violations.len()
        )));
    }
    let image = net.vectors();
    if !figure.points().iter().all(|p| in_span(&image, p)) {
        return Err(Error::InvalidInput(
            "figure is not contained in the stoichiometric subspace".into(),
        ));
    }
    let (dual, gamma) = transfer_dual(net)?;
    let gamma_t = gamma.transpose();
    let m = gamma.ncols();
    let (dual_figure, transferred) = match figure {
        Figure::Cone(k) => {
            let k_star = dual_cone(k);
            let mapped: Vec<_> = k_star
                .generators
                .iter()
                .map(|d| gamma_t.mul_vec(d))
                .filter(|g| !g.is_zero())
                .map(|g| g.primitive())
                .collect();
            let cone = ConeRep::new(m, extreme_filter(&mapped, HullMode::Conic));
            (Figure::Cone(k_star), Figure::Cone(cone))
        }
        Figure::Ball(b) => {
            let (basis, _) = image_kernel_basis(&net.stoichiometric_matrix());
            let b_star = polar_ball(b, &basis);
            let mapped: Vec<_> = b_star.vertices.iter().map(|d| gamma_t.mul_vec(d)).collect();
            let ball = BallRep::new(m, extreme_filter(&mapped, HullMode::Convex));
            (Figure::Ball(b_star), Figure::Ball(ball))
        }
    };
    let verification = closure_check(&transferred, &dual);
    if !verification.is_empty() {
        return Err(Error::Internal(format!(
            "transferred figure fails closure under the dual network ({} violation(s))",
            verification.len()
        )));
    }
    Ok(DualTransfer {
        dual,
        gamma,
        dual_figure,
        transferred,
        verification,
    })
}
