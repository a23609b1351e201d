use num_complex::Complex64;
use serde_json::{json, Value};

use super::connection::Connection;
use super::partial::PartialConnection;
use crate::error::{Error, Result};
use crate::forms::{Foliation, Form, VectorField};
use crate::tolerance::Tolerances;
use crate::trigcalc::{Grid, TrigScalar};

/// Codimension-one foliation `F = ker κ` with `dκ = κ∧ω` and normal field `N`, `κ(N) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct CodimOneData {
    kappa: Form,
    omega: Form,
    normal: VectorField,
    foliation: Foliation,
    residuals: Codim1Residuals,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Codim1Residuals {
    pub min_kappa_norm: f64,
    pub integrability: f64,
    pub structure_equation: f64,
    pub normalization: f64,
}

fn check_real_one_form(f: &Form, name: &str) -> Result<()> {
    if f.degree() != 1 || f.rank() != 1 {
        return Err(Error::Domain(format!("{name} must be a scalar 1-form")));
    }
    let res = f.conj().residual(f);
    if res > 1e-12 {
        return Err(Error::verification(format!("reality of {name}"), res, 1e-12));
    }
    Ok(())
}

impl CodimOneData {
    pub fn new(kappa: Form, omega: Form, normal: VectorField, tol: &Tolerances) -> Result<CodimOneData> {
        let dim = kappa.dim();
        if omega.dim() != dim || normal.dim() != dim {
            return Err(Error::DimensionMismatch("κ, ω and N must live on the same torus".into()));
        }
        check_real_one_form(&kappa, "κ")?;
        check_real_one_form(&omega, "ω")?;
        let comps: Vec<TrigScalar> = (0..dim).map(|j| kappa.coeff(1 << j)).collect();
        let grid = Grid::certification_capped(&kappa.bandwidth());
        let mut min_norm = f64::INFINITY;
        grid.for_each_point(|x| {
            let n: f64 = comps.iter().map(|c| c.eval(x).norm_sqr()).sum::<f64>().sqrt();
            min_norm = min_norm.min(n);
        });
        if min_norm < tol.den_margin {
            return Err(Error::VanishingDenominator {
                min: min_norm,
                margin: tol.den_margin,
            });
        }
        let dk = kappa.d();
        let integ = kappa.wedge(&dk).sup_norm();
        if integ >= tol.integrability {
            return Err(Error::verification("κ∧dκ = 0", integ, tol.integrability));
        }
        let structure = dk.residual(&kappa.wedge(&omega));
        if structure >= tol.integrability {
            return Err(Error::verification("dκ = κ∧ω", structure, tol.integrability));
        }
        let kn = kappa.contract(&normal).residual(&Form::one(dim));
        if kn >= tol.integrability {
            return Err(Error::verification("κ(N) = 1", kn, tol.integrability));
        }
        let frame: Vec<VectorField> = (0..dim)
            .map(|a| VectorField::coordinate(dim, a).sub(&normal.scale_by(&comps[a])))
            .collect();
        let foliation = Foliation::new(dim, frame, tol)?;
        Ok(CodimOneData {
            kappa,
            omega,
            normal,
            foliation,
            residuals: Codim1Residuals {
                min_kappa_norm: min_norm,
                integrability: integ,
                structure_equation: structure,
                normalization: kn,
            },
        })
    }

    /// `κ = dx_axis`, `ω = 0`, `N = ∂_axis`.
    pub fn coordinate(dim: usize, axis: usize) -> CodimOneData {
        CodimOneData::new(
            Form::coordinate(dim, &[axis]),
            Form::zero(dim, 1, 1),
            VectorField::coordinate(dim, axis),
            &Tolerances::default(),
        )
        .expect("coordinate codimension-one data is valid")
    }

    pub fn kappa(&self) -> &Form {
        &self.kappa
    }

    pub fn omega(&self) -> &Form {
        &self.omega
    }

    pub fn normal(&self) -> &VectorField {
        &self.normal
    }

    /// `ker κ`, framed by `X_a = ∂_a − κ_a N`.
    pub fn foliation(&self) -> &Foliation {
        &self.foliation
    }

    pub fn residuals(&self) -> &Codim1Residuals {
        &self.residuals
    }

    /// Sup over the kernel frame of `κ([X_a, N]) − ω(X_a)`.
    pub fn cartan_residual(&self) -> f64 {
        self.foliation
            .frame()
            .iter()
            .map(|x| {
                let br = Form::scalar_function(TrigScalar::zero(self.kappa.dim()))
                    .add(&self.kappa.contract(&x.bracket(&self.normal)));
                br.residual(&self.omega.contract(x))
            })
            .fold(0.0, f64::max)
    }

    /// `A + κ⊗B` for a constant matrix `B`: another extension of the same partial connection.
    pub fn kappa_shift(&self, c: &Connection, b: &nalgebra::DMatrix<Complex64>) -> Result<Connection> {
        let delta = self
            .kappa
            .wedge(&Form::function(crate::trigcalc::MatScalar::from_constant(self.kappa.dim(), b)));
        c.shifted(&delta)
    }

    pub fn to_json(&self) -> Value {
        json!({"kappa": self.kappa.to_json(), "omega": self.omega.to_json(), "N": self.normal.to_json()})
    }

    pub fn from_json(v: &Value, tol: &Tolerances) -> Result<CodimOneData> {
        let field = |k: &str| v.get(k).ok_or_else(|| Error::Domain(format!("codim1: missing \"{k}\"")));
        let kappa = Form::from_json(field("kappa")?)?;
        let omega = Form::from_json(field("omega")?)?;
        let normal = VectorField::from_json(field("N")?, kappa.dim())?;
        CodimOneData::new(kappa, omega, normal, tol)
    }
}

/// Bott connection on `F⊥` in the trivialization by `N`: connection form `ω`,
/// after checking `κ([X,N]) = ω(X)` along the kernel frame.
pub fn bott_connection(cd: &CodimOneData, tol: &Tolerances) -> Result<Connection> {
    let res = cd.cartan_residual();
    if res >= tol.identity {
        return Err(Error::verification("Cartan formula κ([X,N]) = ω(X)", res, tol.identity));
    }
    Connection::new(cd.omega.clone(), true)
}

/// The flat Bott partial connection on `F⊥`.
pub fn bott_partial_connection(cd: &CodimOneData, tol: &Tolerances) -> Result<PartialConnection> {
    PartialConnection::new(bott_connection(cd, tol)?, cd.foliation.clone(), tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connections::is_extension;
    use crate::trigcalc::TrigPoly;

    pub(crate) fn wavy(dim: usize) -> CodimOneData {
        let f = TrigPoly::real(dim, 2.0).add(&TrigPoly::sin(dim, &{
            let mut k = vec![0; dim];
            k[0] = 1;
            k
        }));
        let fs = TrigScalar::poly(f.clone());
        let last = dim - 1;
        let kappa = Form::coordinate(dim, &[last]).scale_by(&fs);
        let minus_log_deriv = TrigScalar::quotient(f.deriv(0).neg(), f.clone()).unwrap();
        let omega = Form::coordinate(dim, &[0]).scale_by(&minus_log_deriv);
        let normal = VectorField::coordinate(dim, last).scale_by(&fs.recip().unwrap());
        CodimOneData::new(kappa, omega, normal, &Tolerances::default()).unwrap()
    }

    #[test]
    fn coordinate_bott_is_trivial() {
        let cd = CodimOneData::coordinate(3, 2);
        let c = bott_connection(&cd, &Tolerances::default()).unwrap();
        assert!(c.form().is_zero());
        assert_eq!(cd.foliation().codim(), 1);
    }

    #[test]
    fn wavy_bott_extends() {
        let cd = wavy(3);
        assert!(cd.cartan_residual() < 1e-10);
        let pc = bott_partial_connection(&cd, &Tolerances::default()).unwrap();
        assert!(is_extension(pc.base(), &pc, &Tolerances::default()));
        assert!(pc.base().curvature().is_negligible(1e-9));
    }

    #[test]
    fn inconsistent_omega_is_rejected() {
        let cd = wavy(3);
        let err = CodimOneData::new(
            cd.kappa().clone(),
            Form::zero(3, 1, 1),
            cd.normal().clone(),
            &Tolerances::default(),
        )
        .unwrap_err();
        assert!(err.is_numerical());
    }

    #[test]
    fn kappa_shift_extends() {
        let cd = wavy(3);
        let pc = bott_partial_connection(&cd, &Tolerances::default()).unwrap();
        let b = nalgebra::DMatrix::from_element(1, 1, Complex64::new(0.7, 0.0));
        let c = cd.kappa_shift(pc.base(), &b).unwrap();
        assert!(is_extension(&c, &pc, &Tolerances::default()));
    }
}
