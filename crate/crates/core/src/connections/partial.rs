use super::connection::Connection;
use crate::error::{Error, Result};
use crate::forms::{Foliation, Form};
use crate::tolerance::Tolerances;

/// Restriction `∇^I = ∇|_F` of a connection to a foliation, verified flat along `F`.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialConnection {
    base: Connection,
    foliation: Foliation,
    flatness_residual: f64,
}

/// Largest sup-norm of `ι_Y ι_X R` over frame pairs `X, Y` of `f`.
pub fn partial_curvature_residual(c: &Connection, f: &Foliation) -> f64 {
    let r = c.curvature();
    let frame = f.frame();
    let mut worst: f64 = 0.0;
    for a in 0..frame.len() {
        let ra = r.contract(&frame[a]);
        for b in a + 1..frame.len() {
            worst = worst.max(ra.contract(&frame[b]).sup_norm());
        }
    }
    worst
}

impl PartialConnection {
    pub fn new(base: Connection, foliation: Foliation, tol: &Tolerances) -> Result<PartialConnection> {
        if base.dim() != foliation.dim() {
            return Err(Error::DimensionMismatch("connection and foliation on different tori".into()));
        }
        let res = partial_curvature_residual(&base, &foliation);
        if res >= tol.vanish {
            return Err(Error::verification("flatness of the partial connection", res, tol.vanish));
        }
        Ok(PartialConnection {
            base,
            foliation,
            flatness_residual: res,
        })
    }

    pub fn base(&self) -> &Connection {
        &self.base
    }

    pub fn foliation(&self) -> &Foliation {
        &self.foliation
    }

    pub fn rank(&self) -> usize {
        self.base.rank()
    }

    pub fn flatness_residual(&self) -> f64 {
        self.flatness_residual
    }
}

/// Largest sup-norm of `ι_X(A_c − A_base)` over the frame of `F`.
pub fn extension_residual(c: &Connection, pc: &PartialConnection) -> f64 {
    if c.rank() != pc.rank() || c.dim() != pc.base.dim() {
        return f64::INFINITY;
    }
    let diff: Form = c.form().sub(pc.base.form());
    pc.foliation
        .frame()
        .iter()
        .map(|x| diff.contract(x).sup_norm())
        .fold(0.0, f64::max)
}

/// True iff `c` agrees with the partial connection along `F`.
pub fn is_extension(c: &Connection, pc: &PartialConnection, tol: &Tolerances) -> bool {
    extension_residual(c, pc) < tol.vanish
}
