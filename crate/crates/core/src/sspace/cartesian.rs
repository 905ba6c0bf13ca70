use serde::Serialize;

use crate::error::{Error, Result};
use crate::sset::certify::{certify_map, CertSummary, Certificate, CertifyMode};
use crate::sset::kan::{kan_fibration_probe, ProbeResult};
use crate::sset::ops::fiber_product;
use crate::sset::SMap;

use super::SimpSpace;

/// A commutative square
///
/// ```text
///   A --top--> B
///   |          |
///  left      right
///   v          v
///   C -bottom-> D
/// ```
#[derive(Clone, Debug)]
pub struct Square {
    pub top: SMap,
    pub left: SMap,
    pub right: SMap,
    pub bottom: SMap,
}

impl Square {
    pub fn commutes(&self) -> bool {
        self.top.then(&self.right).same_images(&self.left.then(&self.bottom))
    }
}

#[derive(Clone, Debug)]
pub struct CartesianProbe {
    pub fibration: ProbeResult,
    /// `None` when the right leg failed its probe (inconclusive)
    pub certificate: Option<Certificate>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CartesianSummary {
    pub fibration: ProbeResult,
    pub certificate: Option<CertSummary>,
    pub verdict: String,
}

impl CartesianProbe {
    pub fn is_inconclusive(&self) -> bool {
        self.certificate.is_none()
    }

    pub fn verdict(&self) -> String {
        match &self.certificate {
            None => "INCONCLUSIVE-LEG".into(),
            Some(c) => c.tier().to_string(),
        }
    }

    pub fn summary(&self) -> CartesianSummary {
        CartesianSummary {
            fibration: self.fibration.clone(),
            certificate: self.certificate.as_ref().map(|c| c.summary()),
            verdict: self.verdict(),
        }
    }
}

/// Probe the right leg for the Kan fibration property up to `fib_bound`;
/// if it passes, certify the comparison map from the corner into the
/// strict pullback.
pub fn homotopy_cartesian_probe(sq: &Square, fib_bound: usize, hom_bound: usize, budget: u64) -> Result<CartesianProbe> {
    if !sq.commutes() {
        return Err(Error::Precondition("square does not commute".into()));
    }
    let fibration = kan_fibration_probe(&sq.right, fib_bound);
    if !fibration.passed() {
        return Ok(CartesianProbe { fibration, certificate: None });
    }
    let pb = fiber_product(&sq.right, &sq.bottom)?;
    let cmp = pb.pair_map(&sq.top, &sq.left)?;
    let cert = certify_map(&cmp, CertifyMode::AllowHomological, hom_bound, budget);
    Ok(CartesianProbe { fibration, certificate: Some(cert) })
}

/// The square `X_{n+1} -> X_1` (last edge) over `X_n -> X_0` (last vertex),
/// with right leg the source map.
pub fn segal_square(x: &SimpSpace, n: usize) -> Result<Square> {
    if n + 1 > x.outer_dim() || n == 0 {
        return Err(Error::Precondition(format!("Segal square at {n} needs outer levels up to {}", n + 1)));
    }
    Ok(Square {
        top: x.edge_map(n + 1, n, n + 1),
        left: x.face(n + 1, n + 1).clone(),
        right: x.source().clone(),
        bottom: x.vertex_map(n, n),
    })
}
