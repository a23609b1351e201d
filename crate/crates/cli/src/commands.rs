use std::time::Instant;

use folrho_core::charforms::{ahat_form, chern_character, chern_forms, transgress_ch};
use folrho_core::connections::{extension_residual, Connection};
use folrho_core::rho::{
    bordism_integrand, e_relative, gv_chernweil_identity, rho_imag, rho_imag_gv, rho_s1, FramingData,
};
use folrho_core::spectral::{
    eta_closed, eta_numeric, frac, mod_one_distance, ArithmeticProgression, EtaMethod, SpectrumSpec,
};
use folrho_core::trigcalc::complex_to_json;
use folrho_core::wo::{kt_class_relation, universal_class, wo_cohomology, WoConfig};
use folrho_core::Tolerances;
use serde_json::{json, Map, Value};

use crate::envelope::{digest, Envelope, Verification};
use crate::error::{CliError, CliResult};
use crate::scene::Scene;
use crate::{random, Cli, Command, Method};

type Fields = Map<String, Value>;

fn fields(v: Value) -> Fields {
    match v {
        Value::Object(m) => m,
        other => Map::from_iter([("result".to_string(), other)]),
    }
}

fn need<T>(v: Option<T>, flag: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::Validation(format!("missing {flag}")))
}

fn eta_method(m: Option<Method>) -> EtaMethod {
    match m {
        Some(Method::ZetaNumeric) => EtaMethod::ZetaNumeric,
        _ => EtaMethod::ClosedForm,
    }
}

fn other_method(m: EtaMethod) -> EtaMethod {
    match m {
        EtaMethod::ClosedForm => EtaMethod::ZetaNumeric,
        EtaMethod::ZetaNumeric => EtaMethod::ClosedForm,
    }
}

/// Scene file from `--scene` or the positional argument, else a seeded random scene.
fn scene_value(cli: &Cli) -> CliResult<Option<Value>> {
    let path = cli.flags.scene.as_ref().or(cli.command.file());
    if let Some(p) = path {
        return crate::scene::read_file(p).map(Some);
    }
    Ok(cli.flags.seed.map(|seed| {
        let name = cli.command.name();
        let default_dim = match name {
            "bordism-integrand" => 4,
            "gv-check" => 5,
            _ => 3,
        };
        random::scene(seed, cli.flags.dim.map_or(default_dim, |d| d as usize), name)
    }))
}

pub fn run(cli: &Cli) -> CliResult<Envelope> {
    let start = Instant::now();
    let tol = match cli.flags.tolerance {
        Some(f) if !(f > 0.0 && f.is_finite()) => {
            return Err(CliError::Validation(format!("--tolerance must be a positive factor, got {f}")))
        }
        Some(f) => Tolerances::scaled(f),
        None => Tolerances::default(),
    };
    let raw = scene_value(cli)?;
    let inputs = json!({
        "command": cli.command.name(),
        "flags": serde_json::to_value(&cli.flags).expect("flags serialize"),
        "scene": raw.clone().unwrap_or(Value::Null),
    });
    let mut report = Verification::default();
    let scene = match (&cli.command, raw) {
        (Command::RhoS1 | Command::WoBetti | Command::WoUniversal, raw) => match raw {
            Some(raw) => Some(Scene::load(raw, &tol, &mut report)?),
            None => None,
        },
        (Command::Eta { .. }, Some(raw)) if raw.get("dim").is_none() => Some(eta_only_scene(raw)?),
        (_, Some(raw)) => Some(Scene::load(raw, &tol, &mut report)?),
        (_, None) => {
            return Err(CliError::Validation(format!(
                "{} needs a scene file (positional or --scene) or --seed for a random scene",
                cli.command.name()
            )))
        }
    };
    let ctx = Ctx { cli, tol, scene: scene.as_ref() };
    let result = match &cli.command {
        Command::Validate { .. } => ctx.validate(&mut report),
        Command::RhoS1 => ctx.rho_s1(&mut report),
        Command::RhoImag { .. } => ctx.rho_imag(&mut report),
        Command::GvCheck { .. } => ctx.gv_check(&mut report),
        Command::ERel { .. } => ctx.e_rel(&mut report),
        Command::Eta { .. } => ctx.eta(&mut report),
        Command::Chern { .. } => ctx.chern(&mut report),
        Command::Ahat { .. } => ctx.ahat(&mut report),
        Command::Transgress { .. } => ctx.transgress(&mut report),
        Command::BordismIntegrand { .. } => ctx.bordism(&mut report),
        Command::WoBetti => ctx.wo_betti(&mut report),
        Command::WoUniversal => ctx.wo_universal(&mut report),
        Command::KtRelation { .. } => ctx.kt_relation(&mut report),
    }?;
    Ok(Envelope {
        task: cli.command.name().to_string(),
        inputs_digest: digest(&inputs),
        result,
        verification: report,
        wall_time: cli.flags.timing.then(|| start.elapsed().as_secs_f64()),
    })
}

/// `{"a","sigma","perturbations"}` without a torus: only task parameters.
fn eta_only_scene(raw: Value) -> CliResult<Scene> {
    let task = match raw.get("task") {
        Some(Value::Object(m)) => m.clone(),
        _ => raw.as_object().cloned().ok_or_else(|| CliError::Validation("scene must be an object".into()))?,
    };
    Ok(Scene {
        dim: 0,
        foliation: None,
        foliation_kind: None,
        codim1: None,
        bundles: Vec::new(),
        normal: None,
        framings: Vec::new(),
        task,
    })
}

struct Ctx<'a> {
    cli: &'a Cli,
    tol: Tolerances,
    scene: Option<&'a Scene>,
}

impl Ctx<'_> {
    fn scene(&self) -> CliResult<&Scene> {
        self.scene.ok_or_else(|| CliError::Validation("this command needs a scene".into()))
    }

    fn validate(&self, report: &mut Verification) -> CliResult<Fields> {
        let s = self.scene()?;
        let fol = s.foliation.as_ref().map(|f| {
            json!({
                "kind": s.foliation_kind,
                "rank": f.rank(),
                "codim": f.codim(),
                "real": f.is_real(),
                "grid_points": f.report().grid_points,
            })
        });
        let bundles: Vec<Value> = s
            .bundles
            .iter()
            .map(|b| {
                json!({
                    "rank": b.conn.rank(),
                    "real": b.conn.is_real(),
                    "metric": if b.metric_given { "given" } else { "standard" },
                    "partial": b.partial.is_some(),
                })
            })
            .collect();
        for (i, b) in s.bundles.iter().enumerate() {
            let defect = b.conn.unitarity_defect(&b.metric)?;
            report.waive(
                format!("/bundles/{i}: unitarity"),
                format!("informational, defect {defect:.3e}"),
            );
        }
        Ok(fields(json!({
            "valid": true,
            "dim": s.dim,
            "foliation": fol,
            "normal": s.normal.as_ref().map(|(c, src)| json!({"rank": c.rank(), "source": src.label()})),
            "bundles": bundles,
            "framings": s.framings.len(),
        })))
    }

    fn rho_s1(&self, report: &mut Verification) -> CliResult<Fields> {
        let r = match self.cli.flags.r {
            Some(r) => r,
            None => need(self.scene.map(|s| s.task_f64("r")).transpose()?.flatten(), "--r")?,
        };
        if !r.is_finite() {
            return Err(CliError::Validation(format!("--r must be finite, got {r}")));
        }
        let r = frac(r);
        let framing = match self.scene {
            Some(s) if !s.framings.is_empty() => s.framing(0)?.clone(),
            _ => FramingData::trivial(1, 1),
        };
        let method = eta_method(self.cli.flags.method);
        let res = rho_s1(r, &framing, method, &self.tol)?;
        let other = rho_s1(r, &framing, other_method(method), &self.tol)?;
        report.check(
            "ρ agrees with the other η method (mod ℤ)",
            mod_one_distance(res.real_part, other.real_part),
            self.tol.identity,
        );
        let mut out = fields(res.to_json());
        out.insert("r".into(), json!(r));
        Ok(out)
    }

    fn rho_imag(&self, report: &mut Verification) -> CliResult<Fields> {
        let s = self.scene()?;
        let b = s.bundle(0)?;
        let pc = s.partial(0)?;
        let (cf, src) = s.normal()?;
        report.check("extension of the partial connection", extension_residual(&b.conn, pc), self.tol.vanish);
        let v = rho_imag(pc, &b.conn, &b.metric, cf, &self.tol)?;
        report.check("ρ^iℝ is imaginary", v.re.abs(), self.tol.vanish);
        Ok(fields(json!({
            "value": complex_to_json(v),
            "real_part": v.re,
            "imag_part": v.im,
            "provenance": {
                "normal_connection": src.label(),
                "metric": if b.metric_given { "given" } else { "standard" },
                "bundle_rank": b.conn.rank(),
            },
        })))
    }

    fn gv_check(&self, report: &mut Verification) -> CliResult<Fields> {
        let s = self.scene()?;
        let cd = s
            .codim1
            .as_ref()
            .ok_or_else(|| CliError::Validation("/foliation: gv-check needs a codim1 foliation".into()))?;
        let n = match s.task_u32("n")? {
            Some(n) => n as usize,
            None => (s.dim.saturating_sub(1)) / 2,
        };
        if 2 * n + 1 != s.dim {
            return Err(CliError::Validation(format!("/task/n: need dim = 2n + 1, got dim {} and n = {n}", s.dim)));
        }
        let gv = rho_imag_gv(cd, n, &self.tol)?;
        let identity = gv_chernweil_identity(cd.omega(), n)?;
        report.check(
            "ρ^iℝ against the transgression constant",
            (gv.value - gv.predicted_transgression).norm(),
            self.tol.identity,
        );
        report.check(
            "Chern–Weil identity with the transgression constant",
            identity.residual_transgression,
            self.tol.identity,
        );
        report.waive(
            "closed-form constant with n!",
            format!(
                "reported only; residual {:.3e}, ρ^iℝ differs by {:.3e}",
                identity.residual,
                (gv.value - gv.predicted_stated).norm()
            ),
        );
        let mut out = fields(gv.to_json());
        out.insert("n".into(), json!(n));
        out.insert("chern_weil_identity".into(), identity.to_json());
        Ok(out)
    }

    fn e_rel(&self, report: &mut Verification) -> CliResult<Fields> {
        let s = self.scene()?;
        let (s1, s0) = (s.framing(1)?, s.framing(0)?);
        let (u, class) = match s.bundles.first() {
            Some(b) => (chern_character(&b.conn), "ch(bundle 0)"),
            None => (chern_character(&Connection::trivial(s.dim, 1)), "1"),
        };
        report.check("closedness of the paired class", u.closedness_residual(), self.tol.identity);
        let v = e_relative(s1, s0, &u, &self.tol)?;
        Ok(fields(json!({
            "value": complex_to_json(v),
            "real_part": v.re,
            "imag_part": v.im,
            "provenance": {"s1": 1, "s0": 0, "class": class},
        })))
    }

    fn eta(&self, report: &mut Verification) -> CliResult<Fields> {
        let s = self.scene()?;
        let a = need(s.task_f64("a")?, "\"a\"")?;
        let sigma = s.task_f64("sigma")?.unwrap_or(1.0);
        let base = ArithmeticProgression::new(a, sigma).map_err(|e| CliError::input("/a", e))?;
        let mut replaced = Vec::new();
        if let Some(p) = s.task.get("perturbations") {
            let list = p
                .as_array()
                .ok_or_else(|| CliError::Validation("/perturbations: expected a list of [old, new] pairs".into()))?;
            for (i, pair) in list.iter().enumerate() {
                let pair = pair
                    .as_array()
                    .filter(|v| v.len() == 2)
                    .and_then(|v| Some((v[0].as_f64()?, v[1].as_f64()?)))
                    .ok_or_else(|| CliError::Validation(format!("/perturbations/{i}: expected [old, new]")))?;
                replaced.push(pair);
            }
        }
        let spec = if replaced.is_empty() {
            SpectrumSpec::ArithmeticProgression(base)
        } else {
            SpectrumSpec::FinitePerturbation { base, replaced }
        };
        let run = |m: EtaMethod| match m {
            EtaMethod::ClosedForm => eta_closed(&spec),
            EtaMethod::ZetaNumeric => eta_numeric(&spec),
        };
        let method = eta_method(self.cli.flags.method);
        let res = run(method).map_err(|e| if e.is_numerical() { e.into() } else { CliError::input("/perturbations", e) })?;
        let other = run(other_method(method))?;
        report.check("ξ agrees with the other method (mod ℤ)", mod_one_distance(res.xi, other.xi), self.tol.identity);
        Ok(fields(serde_json::to_value(&res).expect("η result serializes")))
    }

    fn chern(&self, report: &mut Verification) -> CliResult<Fields> {
        let b = self.scene()?.bundle(0)?;
        let ch = chern_character(&b.conn);
        let c = chern_forms(&b.conn);
        report.check("d ch = 0", ch.closedness_residual(), self.tol.identity);
        report.check("d c = 0", c.closedness_residual(), self.tol.identity);
        Ok(fields(json!({"ch": ch.to_json(), "c": c.to_json()})))
    }

    fn ahat(&self, report: &mut Verification) -> CliResult<Fields> {
        let b = self.scene()?.bundle(0)?;
        let a = ahat_form(&b.conn).map_err(|e| CliError::input("/bundles/0", e))?;
        report.check("d Â = 0", a.closedness_residual(), self.tol.identity);
        Ok(fields(json!({"ahat": a.to_json()})))
    }

    fn transgress(&self, report: &mut Verification) -> CliResult<Fields> {
        let s = self.scene()?;
        let (c1, c0) = (&s.bundle(1)?.conn, &s.bundle(0)?.conn);
        if c1.rank() != c0.rank() {
            return Err(CliError::Validation(format!("/bundles: ranks {} and {} differ", c1.rank(), c0.rank())));
        }
        let t = transgress_ch(c1, c0);
        let (ch1, ch0) = (chern_character(c1), chern_character(c0));
        let res = (1..=(s.dim / 2) as i32)
            .map(|p| t.entry(p).d().residual(&ch1.entry(p).sub(&ch0.entry(p))))
            .fold(0.0, f64::max);
        report.check("d ch̃(∇₁,∇₀) = ch(∇₁) − ch(∇₀)", res, self.tol.identity);
        Ok(fields(json!({"ch_tilde": t.to_json(), "from": 0, "to": 1})))
    }

    fn bordism(&self, report: &mut Verification) -> CliResult<Fields> {
        let s = self.scene()?;
        let b = s.bundle(0)?;
        let pc = s.partial(0)?;
        let (cf, src) = s.normal()?;
        report.check("extension of the partial connection", extension_residual(&b.conn, pc), self.tol.vanish);
        let v = bordism_integrand(pc, &b.conn, cf, &self.tol)?;
        Ok(fields(json!({
            "value": complex_to_json(v),
            "real_part": v.re,
            "imag_part": v.im,
            "provenance": {"normal_connection": src.label(), "codim": pc.foliation().codim()},
        })))
    }

    fn wo_betti(&self, report: &mut Verification) -> CliResult<Fields> {
        let q = need(self.cli.flags.q, "--q")?;
        let max = self.cli.flags.max_degree.unwrap_or(2 * q + 1);
        if q == 0 {
            return Err(CliError::Validation("--q must be positive".into()));
        }
        let rep = wo_cohomology(q, max).map_err(|e| CliError::input("--q/--max-degree", e))?;
        report.structural("Euler characteristic of the truncated complex", rep.euler.holds());
        let mut out = Fields::new();
        for (k, r) in &rep.ranks {
            out.insert(k.to_string(), json!(r));
        }
        out.insert("report".into(), rep.to_json());
        Ok(out)
    }

    fn wo_universal(&self, report: &mut Verification) -> CliResult<Fields> {
        let q = need(self.cli.flags.q, "--q")?;
        let dim = need(self.cli.flags.dim, "--dim")?;
        if q == 0 {
            return Err(CliError::Validation("--q must be positive".into()));
        }
        let config = WoConfig::new(q);
        let u = universal_class(config, dim).map_err(|e| if e.is_numerical() { e.into() } else { CliError::input("--q/--dim", e) })?;
        report.structural("dU = 0", u.d().is_zero());
        Ok(fields(json!({
            "q": q,
            "dim": dim,
            "qprime": config.qprime_value(),
            "U": u.to_json(),
            "display": u.to_string(),
        })))
    }

    fn kt_relation(&self, report: &mut Verification) -> CliResult<Fields> {
        let s = self.scene()?;
        let p = match s.task_u32("p")? {
            Some(p) => p,
            None => self.cli.flags.q.unwrap_or(1),
        };
        let (cf, h) = match s.bundles.first() {
            Some(b) => (&b.conn, b.metric.clone()),
            None => {
                let (c, _) = s.normal()?;
                (c, folrho_core::connections::HermMetric::identity(c.rank()))
            }
        };
        let rep = kt_class_relation(p, cf, &h, &self.tol).map_err(|e| if e.is_numerical() { e.into() } else { CliError::input("/task/p", e) })?;
        report.check("ch̃_{2p}(∇,∇*) = 2iᵖΔ(c̃_p)", rep.residual(), self.tol.identity);
        Ok(fields(rep.to_json()))
    }
}
