//! Scene files: a torus, a foliation, bundles with metrics, a normal
//! connection, framings and task parameters. Every verification the core
//! objects run on construction happens at load time and is recorded.

use std::path::Path;

use folrho_core::connections::{bott_connection, CodimOneData, Connection, HermMetric, PartialConnection};
use folrho_core::connections::extension_residual;
use folrho_core::forms::{Foliation, VectorField};
use folrho_core::rho::FramingData;
use folrho_core::trigcalc::MAX_DIM;
use folrho_core::Tolerances;
use serde_json::{Map, Value};

use crate::envelope::Verification;
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalSource {
    Given,
    Bott,
    Trivial,
}

impl NormalSource {
    pub fn label(self) -> &'static str {
        match self {
            NormalSource::Given => "given",
            NormalSource::Bott => "bott",
            NormalSource::Trivial => "trivial",
        }
    }
}

#[derive(Debug)]
pub struct Bundle {
    pub conn: Connection,
    pub metric: HermMetric,
    pub metric_given: bool,
    /// Flat partial connection along the foliation, when there is one.
    pub partial: Option<PartialConnection>,
}

#[derive(Debug)]
pub struct Scene {
    pub dim: usize,
    pub foliation: Option<Foliation>,
    pub foliation_kind: Option<String>,
    pub codim1: Option<CodimOneData>,
    pub bundles: Vec<Bundle>,
    pub normal: Option<(Connection, NormalSource)>,
    pub framings: Vec<FramingData>,
    pub task: Map<String, Value>,
}

/// Reads JSON, or TOML when the extension is `.toml`.
pub fn read_file(path: &Path) -> CliResult<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
    let is_toml = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("toml"));
    if is_toml {
        toml::from_str::<Value>(&text).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
    } else {
        serde_json::from_str(&text).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
    }
}

fn at(pointer: &str, e: folrho_core::Error) -> CliError {
    CliError::input(pointer, e)
}

fn invalid(pointer: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Validation(format!("{pointer}: {msg}"))
}

fn usize_field(v: &Value, key: &str, pointer: &str) -> CliResult<usize> {
    v.get(key)
        .and_then(Value::as_u64)
        .map(|x| x as usize)
        .ok_or_else(|| invalid(&format!("{pointer}/{key}"), "expected a non-negative integer"))
}

fn connection_on(v: &Value, pointer: &str, dim: usize) -> CliResult<Connection> {
    let c = Connection::from_json(v).map_err(|e| at(pointer, e))?;
    if c.dim() != dim {
        return Err(invalid(pointer, format!("connection lives on T^{} but the scene torus is T^{dim}", c.dim())));
    }
    Ok(c)
}

impl Scene {
    pub fn load(raw: Value, tol: &Tolerances, report: &mut Verification) -> CliResult<Scene> {
        let obj = raw.as_object().ok_or_else(|| invalid("", "scene must be an object"))?;
        let dim = usize_field(&raw, "dim", "")?;
        if dim == 0 || dim > MAX_DIM {
            return Err(invalid("/dim", format!("torus dimension must lie in 1..={MAX_DIM}")));
        }
        let task = match obj.get("task") {
            None => Map::new(),
            Some(Value::Object(m)) => m.clone(),
            Some(_) => return Err(invalid("/task", "expected an object")),
        };

        let mut scene = Scene {
            dim,
            foliation: None,
            foliation_kind: None,
            codim1: None,
            bundles: Vec::new(),
            normal: None,
            framings: Vec::new(),
            task,
        };
        if let Some(f) = obj.get("foliation") {
            scene.load_foliation(f, tol, report)?;
        }
        scene.load_normal(obj.get("normal"), tol, report)?;
        if let Some(bs) = obj.get("bundles") {
            let bs = bs.as_array().ok_or_else(|| invalid("/bundles", "expected a list"))?;
            for (i, b) in bs.iter().enumerate() {
                let bundle = scene.load_bundle(b, &format!("/bundles/{i}"), tol, report)?;
                scene.bundles.push(bundle);
            }
        }
        if let Some(fs) = obj.get("framings") {
            let fs = fs.as_array().ok_or_else(|| invalid("/framings", "expected a list"))?;
            for (i, f) in fs.iter().enumerate() {
                let pointer = format!("/framings/{i}");
                let c = connection_on(f, &pointer, dim)?;
                let fd = FramingData::new(c, tol).map_err(|e| at(&pointer, e))?;
                report.check(format!("{pointer}: flatness"), fd.flatness_residual(), tol.vanish);
                scene.framings.push(fd);
            }
        }
        Ok(scene)
    }

    fn load_foliation(&mut self, v: &Value, tol: &Tolerances, report: &mut Verification) -> CliResult<()> {
        let dim = self.dim;
        let kind = v
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| invalid("/foliation/kind", "expected one of frame, codim1, max, min, coordinate"))?;
        let fol = match kind {
            "max" => Foliation::maximal(dim),
            "min" => Foliation::minimal(dim),
            "coordinate" => {
                let axes = v
                    .get("axes")
                    .and_then(Value::as_array)
                    .ok_or_else(|| invalid("/foliation/axes", "expected a list of 1-based axes"))?
                    .iter()
                    .map(|a| {
                        a.as_u64()
                            .filter(|&a| a >= 1 && a as usize <= dim)
                            .map(|a| a as usize - 1)
                            .ok_or_else(|| invalid("/foliation/axes", format!("axes must lie in 1..={dim}")))
                    })
                    .collect::<CliResult<Vec<_>>>()?;
                Foliation::coordinate(dim, &axes)
            }
            "frame" => {
                let frame = v
                    .get("frame")
                    .and_then(Value::as_array)
                    .ok_or_else(|| invalid("/foliation/frame", "expected a list of vector fields"))?
                    .iter()
                    .enumerate()
                    .map(|(i, x)| VectorField::from_json(x, dim).map_err(|e| at(&format!("/foliation/frame/{i}"), e)))
                    .collect::<CliResult<Vec<_>>>()?;
                Foliation::new(dim, frame, tol).map_err(|e| at("/foliation", e))?
            }
            "codim1" => {
                let cd = CodimOneData::from_json(v, tol).map_err(|e| at("/foliation", e))?;
                let r = cd.residuals();
                report.floor("/foliation: |κ| margin", r.min_kappa_norm, tol.den_margin);
                report.check("/foliation: dκ = κ∧ω", r.structure_equation, tol.identity);
                report.check("/foliation: κ(N) = 1", r.normalization, tol.identity);
                let fol = cd.foliation().clone();
                self.codim1 = Some(cd);
                fol
            }
            other => return Err(invalid("/foliation/kind", format!("unknown kind \"{other}\""))),
        };
        let r = fol.report();
        report.check("/foliation: integrability", r.integrability_residual, tol.integrability);
        if fol.rank() > 0 {
            report.floor("/foliation: frame independence margin", r.min_independent_norm, tol.den_margin);
        }
        if !fol.is_real() {
            report.waive("/foliation: reality", format!("complex foliation, reality residual {:.3e}", r.reality_residual));
        }
        self.foliation_kind = Some(kind.to_string());
        self.foliation = Some(fol);
        Ok(())
    }

    fn load_normal(&mut self, v: Option<&Value>, tol: &Tolerances, report: &mut Verification) -> CliResult<()> {
        let Some(fol) = &self.foliation else {
            if v.is_some() {
                return Err(invalid("/normal", "a normal connection needs a foliation"));
            }
            return Ok(());
        };
        let codim = fol.codim();
        let normal = match (v, &self.codim1) {
            (Some(v), _) => {
                let c = connection_on(v, "/normal", self.dim)?;
                if c.rank() != codim.max(1) {
                    return Err(invalid("/normal", format!("rank {} but the foliation has codimension {codim}", c.rank())));
                }
                (c, NormalSource::Given)
            }
            (None, Some(cd)) => {
                report.check("/foliation: Cartan formula κ([X,N]) = ω(X)", cd.cartan_residual(), tol.identity);
                (bott_connection(cd, tol).map_err(|e| at("/foliation", e))?, NormalSource::Bott)
            }
            (None, None) if self.foliation_kind.as_deref() != Some("frame") => {
                // Coordinate foliations have a trivial normal bundle with a flat Bott connection.
                (Connection::trivial(self.dim, codim.max(1)), NormalSource::Trivial)
            }
            (None, None) => {
                report.waive("/normal", "frame foliation without a normal connection; commands needing one will refuse");
                return Ok(());
            }
        };
        report.structural("/normal: real", normal.0.is_real());
        self.normal = Some(normal);
        Ok(())
    }

    fn load_bundle(&self, v: &Value, pointer: &str, tol: &Tolerances, report: &mut Verification) -> CliResult<Bundle> {
        let conn = connection_on(v, pointer, self.dim)?;
        let (metric, metric_given) = match v.get("metric") {
            Some(m) => (HermMetric::from_json(m).map_err(|e| at(&format!("{pointer}/metric"), e))?, true),
            None => (HermMetric::identity(conn.rank()), false),
        };
        if metric.rank() != conn.rank() {
            return Err(invalid(&format!("{pointer}/metric"), format!("{0}x{0} metric on a rank {1} bundle", metric.rank(), conn.rank())));
        }
        if !metric_given {
            report.waive(format!("{pointer}/metric"), "no metric given; the standard one is used");
        }
        let mut partial = None;
        if let Some(fol) = &self.foliation {
            match v.get("partial") {
                Some(p) => {
                    let pp = format!("{pointer}/partial");
                    let base = connection_on(p, &pp, self.dim)?;
                    let pc = PartialConnection::new(base, fol.clone(), tol).map_err(|e| at(&pp, e))?;
                    report.check(format!("{pp}: flatness along F"), pc.flatness_residual(), tol.vanish);
                    let ext = extension_residual(&conn, &pc);
                    report.check(format!("{pointer}: extends the partial connection"), ext, tol.vanish);
                    partial = Some(pc);
                }
                None => match PartialConnection::new(conn.clone(), fol.clone(), tol) {
                    Ok(pc) => {
                        report.check(format!("{pointer}: flatness along F"), pc.flatness_residual(), tol.vanish);
                        partial = Some(pc);
                    }
                    Err(e) => report.waive(
                        format!("{pointer}/partial"),
                        format!("connection is not flat along F ({e}); commands needing a partial connection will refuse"),
                    ),
                },
            }
        } else if v.get("partial").is_some() {
            return Err(invalid(&format!("{pointer}/partial"), "a partial connection needs a foliation"));
        }
        Ok(Bundle { conn, metric, metric_given, partial })
    }

    pub fn bundle(&self, i: usize) -> CliResult<&Bundle> {
        self.bundles
            .get(i)
            .ok_or_else(|| invalid("/bundles", format!("this command needs at least {} bundle(s)", i + 1)))
    }

    pub fn foliation(&self) -> CliResult<&Foliation> {
        self.foliation.as_ref().ok_or_else(|| invalid("/foliation", "this command needs a foliation"))
    }

    pub fn partial(&self, i: usize) -> CliResult<&PartialConnection> {
        self.foliation()?;
        self.bundle(i)?
            .partial
            .as_ref()
            .ok_or_else(|| invalid(&format!("/bundles/{i}"), "no flat partial connection along F"))
    }

    pub fn normal(&self) -> CliResult<&(Connection, NormalSource)> {
        self.foliation()?;
        self.normal
            .as_ref()
            .ok_or_else(|| invalid("/normal", "this command needs a normal connection"))
    }

    pub fn framing(&self, i: usize) -> CliResult<&FramingData> {
        self.framings
            .get(i)
            .ok_or_else(|| invalid("/framings", format!("this command needs at least {} framing(s)", i + 1)))
    }

    pub fn task_f64(&self, key: &str) -> CliResult<Option<f64>> {
        match self.task.get(key) {
            None => Ok(None),
            Some(v) => v.as_f64().map(Some).ok_or_else(|| invalid(&format!("/task/{key}"), "expected a number")),
        }
    }

    pub fn task_u32(&self, key: &str) -> CliResult<Option<u32>> {
        match self.task.get(key) {
            None => Ok(None),
            Some(v) => v
                .as_u64()
                .and_then(|x| u32::try_from(x).ok())
                .map(Some)
                .ok_or_else(|| invalid(&format!("/task/{key}"), "expected a non-negative integer")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn load(v: Value) -> CliResult<(Scene, Verification)> {
        let mut report = Verification::default();
        Scene::load(v, &Tolerances::default(), &mut report).map(|s| (s, report))
    }

    #[test]
    fn coordinate_scene_defaults() {
        let (s, report) = load(json!({
            "dim": 3,
            "foliation": {"kind": "coordinate", "axes": [1]},
            "bundles": [{"rank": 1, "A": {"dim": 3, "degree": 1, "terms": [{"idx": [2], "entry": 0.5}]}, "real": true}],
        }))
        .unwrap();
        assert_eq!(s.foliation().unwrap().codim(), 2);
        assert_eq!(s.normal().unwrap().1, NormalSource::Trivial);
        assert!(s.partial(0).is_ok());
        assert!(report.checks.iter().all(|c| c.passed()));
    }

    #[test]
    fn pointers_in_diagnostics() {
        let err = load(json!({"dim": 2, "bundles": [{"A": {"dim": 3, "degree": 1, "terms": []}}]})).unwrap_err();
        assert!(err.to_string().contains("/bundles/0"), "{err}");
        assert_eq!(err.exit_code(), 2);
        let err = load(json!({"dim": 2, "foliation": {"kind": "leafy"}})).unwrap_err();
        assert!(err.to_string().contains("/foliation/kind"));
    }

    #[test]
    fn non_integrable_frame_is_rejected() {
        // ∂₁ and ∂₂ + sin(x₁)∂₃ do not close under the bracket.
        let s = |k: [i32; 3], re: f64, im: f64| json!([{"k": k, "re": re, "im": im}]);
        let frame = json!([
            [s([0, 0, 0], 1.0, 0.0), [], []],
            [[], s([0, 0, 0], 1.0, 0.0), [{"k": [1, 0, 0], "re": 0.0, "im": -0.5}, {"k": [-1, 0, 0], "re": 0.0, "im": 0.5}]],
        ]);
        let err = load(json!({"dim": 3, "foliation": {"kind": "frame", "frame": frame}})).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("residual"), "{err}");
    }
}
