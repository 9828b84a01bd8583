//! One function per scenario block. Each returns report records.

use std::f64::consts::PI;
use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context};
use dirac_forge_core::dirac::{CliffordConnection, DiracOperator, SectionField};
use dirac_forge_core::geometry::{presets, Geometry, StencilOrder};
use dirac_forge_core::models::dhym::DhymModel;
use dirac_forge_core::models::geodesic::{
    equal_latitude_endpoints, geodesic_minimize, geodesic_ode, great_circle_velocity, path_distance, straight_line,
    DescentOptions,
};
use dirac_forge_core::models::higgs::{ehc_action, gauge_higgs_report, HiggsBundle};
use dirac_forge_core::models::sigma::{Proportionality, SigmaMap, SigmaModel};
use dirac_forge_core::models::target::TargetMetric;
use dirac_forge_core::models::ym::{GaugeCurvature, YangMillsModel};
use dirac_forge_core::module::{algebra_suite, builtin, spinor};
use dirac_forge_core::{CMat, Sign, Signature, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{
    AlgebraSpec, ConvergenceSpec, DhymSpec, GeodesicSpec, GeometrySpec, HiggsSpec, LichnerowiczSpec, Scenario, SigmaSpec,
    StypeSpec, TraceSpec, YangMillsSpec,
};
use crate::ingest;
use crate::report::{Provenance, Record};

pub fn sign(e: i32) -> Sign {
    if e < 0 {
        Sign::Minus
    } else {
        Sign::Plus
    }
}

fn tag(e: Sign) -> &'static str {
    match e {
        Sign::Plus => "+",
        Sign::Minus => "-",
    }
}

fn stencil(order: usize) -> StencilOrder {
    if order == 2 {
        StencilOrder::Two
    } else {
        StencilOrder::Four
    }
}

/// Geometry of a spec, with the node count optionally replaced.
pub fn geometry(spec: &GeometrySpec, order: usize, nodes: Option<usize>, base: &Path) -> anyhow::Result<Arc<Geometry>> {
    let n = nodes.unwrap_or(spec.nodes);
    let p = spec.dim.checked_sub(spec.q).context("geometry: q exceeds dim")?;
    let metric = match spec.preset.as_str() {
        "flat-torus" => presets::flat_torus(p, spec.q, n, spec.length)?,
        "flat-patch" => presets::flat_patch(p, spec.q, n, spec.start, spec.end)?,
        "sphere-cap" => presets::sphere_cap(spec.radius, spec.theta0, n, n)?,
        "hyperbolic" => {
            if spec.start <= 0.0 {
                bail!("hyperbolic geometry needs 0 < start < end for the y range");
            }
            presets::hyperbolic(spec.length, spec.start, spec.end, n, n)?
        }
        "raw" => {
            if nodes.is_some() {
                bail!("a raw metric table has a fixed grid and cannot be refined");
            }
            let file = spec.file.as_deref().context("raw geometry needs `file`")?;
            ingest::read_metric(&base.join(file), &spec.axes)?
        }
        other => bail!("unknown geometry preset '{other}'"),
    };
    Ok(Arc::new(Geometry::new(metric, stencil(order))?))
}

/// Scalar curvature of the preset in closed form.
pub fn exact_scal(spec: &GeometrySpec) -> Option<f64> {
    match spec.preset.as_str() {
        "flat-torus" | "flat-patch" => Some(0.0),
        "sphere-cap" => Some(2.0 / (spec.radius * spec.radius)),
        "hyperbolic" => Some(-2.0),
        _ => None,
    }
}

/// Nodes at least `band` away from every closed chart edge.
pub fn interior(geom: &Geometry, band: f64) -> Vec<bool> {
    let grid = geom.grid();
    (0..geom.len())
        .map(|p| {
            grid.axes().iter().enumerate().all(|(k, ax)| {
                if ax.periodic {
                    return true;
                }
                let x = grid.coord(p, k);
                x > ax.origin + band && x < ax.origin + ax.length() - band
            })
        })
        .collect()
}

fn volume(geom: &Geometry) -> f64 {
    geom.integrate(&vec![1.0; geom.len()])
}

fn scal_reference(geom: &Geometry, spec: &GeometrySpec) -> (Vec<f64>, Provenance) {
    match exact_scal(spec) {
        Some(s) => (vec![s; geom.len()], Provenance::ClosedForm),
        None => (geom.scalar_curvature(), Provenance::Identity),
    }
}

fn mass_operator(geom: &Arc<Geometry>, module: &str, eps: Sign, mass: impl Fn(usize) -> f64) -> anyhow::Result<DiracOperator> {
    let (p, q) = geom.inertia();
    let m = builtin(module, Signature::new(p, q, eps)?)?;
    let conn = CliffordConnection::new(geom.clone(), m, None)?;
    let r = conn.module().rank();
    let phi = (0..geom.len()).map(|x| CMat::identity(r).scale_real(mass(x))).collect();
    Ok(DiracOperator::simple_type(conn, phi)?)
}

fn algebra_label(check: &str) -> &'static str {
    if check.contains("symbol") {
        "symbolmap"
    } else if check.contains("quantize") {
        "quantmap"
    } else {
        "cliffmodbdl"
    }
}

pub fn algebra(spec: &AlgebraSpec, eps: &[i32]) -> anyhow::Result<Vec<Record>> {
    let signs: Vec<Sign> = eps.iter().map(|e| sign(*e)).collect();
    let sigs: Vec<Signature> = match spec.signature {
        Some([p, q]) => signs.iter().map(|e| Signature::new(p, q, *e)).collect::<Result<_, _>>()?,
        None => Signature::all_up_to(spec.max_n).filter(|s| signs.contains(&s.eps())).collect(),
    };
    let mut out = Vec::new();
    for sig in sigs {
        for c in algebra_suite(sig)? {
            out.push(Record::below(
                format!("algebra/Cl({},{})/eps{}/{}", sig.p(), sig.q(), tag(sig.eps()), c.name),
                algebra_label(c.name),
                c.max_error,
                Provenance::Identity,
                1e-12,
            ));
        }
    }
    Ok(out)
}

pub fn stype(s: &Scenario, spec: &StypeSpec, geom: &Arc<Geometry>, gspec: &GeometrySpec) -> anyhow::Result<Vec<Record>> {
    let mut out = Vec::new();
    let (scal, prov) = scal_reference(geom, gspec);
    let int_scal = geom.integrate(&scal);
    let vol = volume(geom);
    for &e in &s.eps {
        let eps = sign(e);
        for &m in &spec.masses {
            let d = mass_operator(geom, &s.module, eps, |_| m)?;
            let n = d.rank() as f64;
            let dec = d.decompose();
            let action = d.universal_action(&dec).re;
            let reference = -eps.value() * n / 4.0 * int_scal + n * m * m * vol;
            let name = format!("stype/m={m}/eps{}", tag(eps));
            out.push(Record::check(
                format!("{name}/action"),
                "stypediract",
                action,
                reference,
                prov,
                spec.tolerance * (1.0 + action.abs()),
            ));
            let lam: Vec<f64> = dec.phi_d.iter().map(|x| x.matmul(x).trace().re).collect();
            let lo = lam.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = lam.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            out.push(Record::below(format!("{name}/lambda-spread"), "stypediract", hi - lo, Provenance::Identity, 1e-12));
        }
    }
    Ok(out)
}

/// Worst relative error of `tr V_D` against `−ε(N/4)scal + N m²` and of
/// the trace formula against `tr V_D`, over interior nodes.
pub fn lichnerowicz_errors(
    geom: &Arc<Geometry>,
    gspec: &GeometrySpec,
    module: &str,
    eps: Sign,
    mass: f64,
) -> anyhow::Result<(f64, f64)> {
    let (scal, _) = scal_reference(geom, gspec);
    let inside = interior(geom, gspec.band);
    if !inside.iter().any(|b| *b) {
        bail!("no interior nodes at band {}", gspec.band);
    }
    let d = mass_operator(geom, module, eps, |_| mass)?;
    let n = d.rank() as f64;
    let dec = d.decompose();
    let tf = dec.trace_formula(&d)?;
    let mut worst: f64 = 0.0;
    let mut trace: f64 = 0.0;
    for p in (0..geom.len()).filter(|p| inside[*p]) {
        let want = -eps.value() * n / 4.0 * scal[p] + n * mass * mass;
        let scale = want.abs().max(1.0);
        worst = worst.max((dec.tr_v[p] - C64::new(want, 0.0)).norm() / scale);
        trace = trace.max((tf.rhs[p] - dec.tr_v[p]).norm() / scale);
    }
    Ok((worst, trace))
}

pub fn lichnerowicz(
    s: &Scenario,
    spec: &LichnerowiczSpec,
    geom: &Arc<Geometry>,
    gspec: &GeometrySpec,
) -> anyhow::Result<Vec<Record>> {
    let mut out = Vec::new();
    for &e in &s.eps {
        let eps = sign(e);
        let (v, t) = lichnerowicz_errors(geom, gspec, &s.module, eps, spec.mass)?;
        let name = format!("lichnerowicz/eps{}", tag(eps));
        let prov = if exact_scal(gspec).is_some() { Provenance::ClosedForm } else { Provenance::Identity };
        out.push(Record::below(format!("{name}/interior-rel-error"), "stypediract", v, prov, spec.tolerance));
        out.push(Record::below(format!("{name}/trace-formula-interior"), "trdirpot", t, Provenance::Identity, spec.tolerance));
    }
    Ok(out)
}

pub fn trace(s: &Scenario, spec: &TraceSpec, geom: &Arc<Geometry>) -> anyhow::Result<Vec<Record>> {
    let mut out = Vec::new();
    for &e in &s.eps {
        let eps = sign(e);
        let g = geom.clone();
        let d = mass_operator(geom, &s.module, eps, move |p| spec.mass + spec.amplitude * g.grid().coord(p, 0).sin())?;
        let dec = d.decompose();
        let tf = dec.trace_formula(&d)?;
        let lhs = d.universal_action(&dec);
        let rhs = geom.integrate_c(&tf.rhs);
        let name = format!("trace/eps{}", tag(eps));
        out.push(Record::check(
            format!("{name}/integrated"),
            "trdirpot",
            lhs.re,
            rhs.re,
            Provenance::Identity,
            spec.tolerance,
        ));
        out.push(Record::below(
            format!("{name}/integrated-imag"),
            "trdirpot",
            (lhs - rhs).im.abs(),
            Provenance::Identity,
            spec.tolerance,
        ));
        let gap: Vec<C64> = (0..d.len()).map(|p| dec.tr_v[p] - tf.curvature[p] - tf.potential[p]).collect();
        out.push(Record::below(
            format!("{name}/pointwise-gap-integral"),
            "trdirpot",
            geom.integrate_c(&gap).norm(),
            Provenance::Identity,
            spec.tolerance,
        ));
        out.push(Record::below(
            format!("{name}/divergence-integral"),
            "trdirpot",
            geom.integrate_c(&tf.divergence).norm(),
            Provenance::Identity,
            spec.tolerance,
        ));
    }
    Ok(out)
}

/// Least-squares slope of `ln e` against `ln h`.
pub fn fitted_order(h: &[f64], e: &[f64]) -> f64 {
    let x: Vec<f64> = h.iter().map(|v| v.ln()).collect();
    let y: Vec<f64> = e.iter().map(|v| v.ln()).collect();
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(&y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

pub fn convergence(s: &Scenario, spec: &ConvergenceSpec, grids: &[usize], base: &Path) -> anyhow::Result<Vec<Record>> {
    let gspec = s.geometry.as_ref().context("convergence needs a [geometry] block")?;
    if grids.len() < 2 {
        bail!("convergence needs at least two grid sizes, got {grids:?}");
    }
    if grids.windows(2).any(|w| w[0] >= w[1]) {
        bail!("grid sizes must be strictly increasing, got {grids:?}");
    }
    let exact = exact_scal(gspec).context("convergence needs a preset with closed-form curvature")?;
    let eps = sign(s.eps[0]);
    let mut hs = Vec::new();
    let mut errs = Vec::new();
    let mut out = Vec::new();
    for &n in grids {
        let geom = geometry(gspec, s.order, Some(n), base)?;
        let err = match spec.quantity.as_str() {
            "scal" => {
                let inside = interior(&geom, gspec.band);
                let scal = geom.scalar_curvature();
                let scale = exact.abs().max(1.0);
                (0..geom.len())
                    .filter(|p| inside[*p])
                    .map(|p| (scal[p] - exact).abs() / scale)
                    .fold(0.0, f64::max)
            }
            _ => lichnerowicz_errors(&geom, gspec, &s.module, eps, 0.0)?.0,
        };
        hs.push(geom.grid().axis(0).spacing);
        errs.push(err);
        out.push(Record::info(format!("convergence/{}/n={n}/error", spec.quantity), "stypediract", err, 0.0));
    }
    for k in 1..grids.len() {
        let order = (errs[k - 1] / errs[k]).ln() / (hs[k - 1] / hs[k]).ln();
        out.push(Record::info(
            format!("convergence/{}/n={}..{}/order", spec.quantity, grids[k - 1], grids[k]),
            "stypediract",
            order,
            s.order as f64,
        ));
    }
    let fit = fitted_order(&hs, &errs);
    let name = format!("convergence/{}/fitted-order", spec.quantity);
    out.push(match spec.min_order {
        Some(min) => Record::at_least(name, "stypediract", fit, min, Provenance::Measured),
        None => Record::check(name, "stypediract", fit, s.order as f64, Provenance::Measured, 0.3),
    });
    Ok(out)
}

fn random_linear(g: &Geometry, t: TargetMetric, rng: &mut ChaCha8Rng) -> anyhow::Result<SigmaMap> {
    let n1 = g.dim();
    let n2 = t.dim();
    let a: Vec<Vec<f64>> = (0..n2).map(|_| (0..n1).map(|_| rng.gen_range(-2.0..2.0)).collect()).collect();
    let b: Vec<f64> = (0..n2).map(|_| rng.gen_range(-1.0..1.0)).collect();
    Ok(SigmaMap::from_fn(g, t, |x| {
        (0..n2).map(|mu| b[mu] + (0..n1).map(|i| a[mu][i] * x[i]).sum::<f64>()).collect()
    })?)
}

pub fn sigma(s: &Scenario, spec: &SigmaSpec) -> anyhow::Result<Vec<Record>> {
    let mut out = Vec::new();
    for &[p1, q1] in &spec.bases {
        let geom = Arc::new(Geometry::new(presets::flat_patch(p1, q1, spec.nodes, -1.0, 1.0)?, stencil(s.order))?);
        for &[p2, q2] in &spec.targets {
            let target = TargetMetric::Flat { p: p2, q: q2 };
            for &a in &s.eps {
                for &b in &s.eps {
                    let (e1, e2) = (sign(a), sign(b));
                    let model = SigmaModel::new(spinor(Signature::new(p1, q1, e1)?)?, spinor(Signature::new(p2, q2, e2)?)?)?;
                    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
                    let (mut num, mut herm, mut den) = (Vec::new(), Vec::new(), Vec::new());
                    let mut first = None;
                    for _ in 0..spec.maps {
                        let map = random_linear(&geom, target.clone(), &mut rng)?;
                        let f = model.field(&geom, &map)?;
                        num.extend(f.phi_d.iter().map(|x| model.action_density(x)));
                        herm.extend(f.chi.iter().map(|c| model.hermitian_norm(c)));
                        den.extend(map.energy_density(&geom)?);
                        first.get_or_insert(map);
                    }
                    let r = Proportionality::measure(&num, &den, 1e-12);
                    let pr = Proportionality::measure(&herm, &den, 1e-12);
                    let rk = model.twist().module.rank() as f64;
                    let n1 = model.base().rank() as f64;
                    let n2 = model.target_module().rank() as f64;
                    let name = format!("sigma/base({p1},{q1})/target({p2},{q2})/eps{}{}", tag(e1), tag(e2));
                    out.push(Record::below(format!("{name}/spread"), "dirharmact", r.spread, Provenance::Identity, 1e-10));
                    out.push(Record::check(
                        format!("{name}/constant"),
                        "dirharmact",
                        r.ratio,
                        -e1.value() * e2.value() * rk,
                        Provenance::ClosedForm,
                        1e-10,
                    ));
                    if q2 == 0 {
                        out.push(Record::below(
                            format!("{name}/hermitian-norm-spread"),
                            "dirharmact",
                            pr.spread,
                            Provenance::Identity,
                            1e-10,
                        ));
                        out.push(Record::check(
                            format!("{name}/hermitian-norm-vs-rank-product"),
                            "dirharmact",
                            pr.ratio,
                            e1.value() * n1 * n2,
                            Provenance::ClosedForm,
                            1e-10,
                        ));
                    } else {
                        out.push(Record::info(
                            format!("{name}/hermitian-norm-vs-rank-product"),
                            "dirharmact",
                            pr.ratio,
                            e1.value() * n1 * n2,
                        ));
                    }
                    out.push(Record::info(
                        format!("{name}/hermitian-norm-vs-rank-sum"),
                        "dirharmact",
                        pr.ratio,
                        e1.value() * (n1 + n2),
                    ));
                    let map = first.context("sigma block needs maps >= 1")?;
                    let act = model.action(&geom, &map, None)?;
                    out.push(Record::check(
                        format!("{name}/action"),
                        "dirharmact",
                        act.universal,
                        act.closed_form,
                        Provenance::Identity,
                        1e-6 * (1.0 + act.universal.abs()),
                    ));
                }
            }
        }
    }
    Ok(out)
}

pub fn geodesic(spec: &GeodesicSpec) -> anyhow::Result<Vec<Record>> {
    let sphere = TargetMetric::unit_sphere();
    let mut out = Vec::new();
    for &d in &spec.distances {
        let (a, b) = equal_latitude_endpoints(spec.latitude, d);
        let r = geodesic_minimize(&sphere, straight_line(&a, &b, spec.nodes), &DescentOptions::default())?;
        let v0 = great_circle_velocity(&a, &b)?;
        let ode = geodesic_ode(&sphere, &a, &v0, spec.nodes - 1)?;
        let name = format!("geodesic/d={d}");
        out.push(Record::check(format!("{name}/energy"), "geod", r.energy, d * d, Provenance::ClosedForm, 1e-3 * d * d));
        out.push(Record::below(
            format!("{name}/rk4-sup-distance"),
            "geod",
            path_distance(&r.path, &ode)?,
            Provenance::Oracle,
            1e-3,
        ));
        out.push(Record::info(format!("{name}/iterations"), "geod", r.iterations as f64, 0.0));
        out.push(Record::info(format!("{name}/converged"), "geod", if r.converged { 1.0 } else { 0.0 }, 1.0));
    }
    Ok(out)
}

pub fn yang_mills(s: &Scenario, spec: &YangMillsSpec) -> anyhow::Result<Vec<Record>> {
    let geom = Arc::new(Geometry::new(presets::flat_torus(2, 0, spec.nodes, 2.0 * PI)?, stencil(s.order))?);
    let w = spec.fiber_rank;
    let area = volume(&geom);
    let mut out = Vec::new();
    for &f in &spec.flux {
        let block = CMat::identity(w).scale(C64::new(0.0, f));
        let flux = GaugeCurvature::constant(geom.len(), 2, w, &[((0, 1), block)])?;
        for &a in &s.eps {
            for &b in &s.eps {
                let (e1, e2) = (sign(a), sign(b));
                let model = YangMillsModel::new(Signature::new(2, 0, e1)?, w, spinor(Signature::new(2, 0, e2)?)?)?;
                let act = model.action(&geom, &flux, None, None)?;
                let rk = act.rank_twist as f64;
                let c = e1.value() * e2.value() * rk / w as f64;
                let name = format!("ym/f={f}/eps{}{}", tag(e1), tag(e2));
                out.push(Record::below(format!("{name}/spread"), "ymchi", act.constant.spread, Provenance::Identity, 1e-10));
                out.push(Record::check(format!("{name}/constant"), "ymchi", act.constant.ratio, c, Provenance::ClosedForm, 1e-10));
                let oracle = c * 2.0 * f * f * w as f64 * area;
                out.push(Record::check(
                    format!("{name}/ym-term"),
                    "ymchi",
                    act.ym_term,
                    oracle,
                    Provenance::ClosedForm,
                    1e-9 * (1.0 + oracle.abs()),
                ));
                out.push(Record::check(
                    format!("{name}/universal-vs-ym-action"),
                    "ymchi",
                    act.universal,
                    act.closed_form,
                    Provenance::Identity,
                    1e-6 * act.universal.abs().max(1e-12),
                ));
            }
        }
    }
    Ok(out)
}

pub fn dhym(s: &Scenario, spec: &DhymSpec) -> anyhow::Result<Vec<Record>> {
    let geom = Arc::new(Geometry::new(presets::flat_torus(2, 0, spec.nodes, 2.0 * PI)?, stencil(s.order))?);
    let map = SigmaMap::from_fn(&geom, TargetMetric::Flat { p: 2, q: 0 }, |x| {
        vec![x[0].sin(), x[1].cos() + 0.3 * x[0].sin()]
    })?;
    let w = spec.fiber_rank;
    let pot: Vec<Vec<CMat>> = (0..geom.len())
        .map(|p| {
            let x = geom.grid().coord(p, 0);
            vec![CMat::zeros(w, w), CMat::identity(w).scale(C64::new(0.0, 0.5 * x.sin()))]
        })
        .collect();
    let f = GaugeCurvature::from_potential(&geom, &pot)?;
    let mut out = Vec::new();
    for &a in &s.eps {
        let e1 = sign(a);
        let e2 = e1.flip();
        let model = DhymModel::new(Signature::new(2, 0, e1)?, w, spinor(Signature::new(2, 0, e2)?)?)?;
        let act = model.action(&geom, &map, &f, Some(&pot))?;
        let name = format!("dhym/eps{}{}", tag(e1), tag(e2));
        out.push(Record::info(format!("{name}/rank-e1"), "DEHYM-action", act.rank_e1 as f64, (8 * w) as f64));
        out.push(Record::below(format!("{name}/cross-trace"), "DEHYM-action", act.cross_trace, Provenance::Identity, 1e-12));
        out.push(Record::check(
            format!("{name}/total-vs-parts"),
            "DEHYM-action",
            act.universal,
            act.parts,
            Provenance::Identity,
            1e-6 * act.universal.abs(),
        ));
        for (part, v) in [("scal", act.scal_term), ("sigma", act.sigma_term), ("ym", act.ym_term)] {
            out.push(Record::info(format!("{name}/{part}-term"), "DEHYM-action", v, 0.0));
        }
        for (part, c) in [("sigma", act.sigma_constant), ("ym", act.ym_constant)] {
            out.push(Record::below(format!("{name}/{part}-spread"), "DEHYM-action", c.spread, Provenance::Identity, 1e-10));
            out.push(Record::info(format!("{name}/{part}-constant"), "DEHYM-action", c.ratio, act.rank_twist as f64));
        }
    }
    Ok(out)
}

fn diag_i(vals: &[f64]) -> CMat {
    CMat::from_diagonal(&vals.iter().map(|v| C64::new(0.0, *v)).collect::<Vec<_>>())
}

fn identity_records(out: &mut Vec<Record>, name: &str, b: &HiggsBundle, geom: &Geometry) -> anyhow::Result<f64> {
    let id = b.identity(geom)?;
    out.push(Record::below(format!("{name}/pointwise"), "higgskinterm", id.pointwise, Provenance::Identity, 1e-10));
    out.push(Record::below(format!("{name}/lambda"), "hkt", id.trace, Provenance::Identity, 1e-10));
    Ok(id.nabla_phi.iter().copied().fold(0.0, f64::max))
}

pub fn higgs(s: &Scenario, spec: &HiggsSpec) -> anyhow::Result<Vec<Record>> {
    let order = stencil(s.order);
    let mut out = Vec::new();

    let torus = Arc::new(Geometry::new(presets::flat_torus(2, 0, spec.nodes, 2.0 * PI)?, order)?);
    let b = HiggsBundle::trivial(&torus, 1, |x| vec![C64::new(x[0].sin(), (2.0 * x[1]).cos())])?;
    identity_records(&mut out, "higgs/trivial", &b, &torus)?;

    // A = i dx and φ = e^{−ix}φ₀ is covariantly constant.
    let fine = Arc::new(Geometry::new(presets::flat_torus(2, 0, 96, 2.0 * PI)?, order)?);
    let b = HiggsBundle::from_fn(
        &fine,
        CMat::identity(1),
        |_| vec![diag_i(&[1.0]), CMat::zeros(1, 1)],
        |x| vec![C64::from_polar(0.7, -x[0])],
    )?;
    let nabla = identity_records(&mut out, "higgs/abelian", &b, &fine)?;
    out.push(Record::below("higgs/abelian/nabla-phi", "higgskinterm", nabla, Provenance::ClosedForm, 1e-8));

    let cap = Arc::new(Geometry::new(presets::sphere_cap(1.3, 0.4, spec.nodes, spec.nodes)?, order)?);
    let h = CMat::from_fn(2, 2, |i, j| match (i, j) {
        (0, 0) => C64::new(2.0, 0.0),
        (1, 1) => C64::new(1.5, 0.0),
        (0, 1) => C64::new(0.3, 0.4),
        _ => C64::new(0.3, -0.4),
    });
    let b = HiggsBundle::from_fn(
        &cap,
        h,
        |x| {
            let a0 = CMat::from_fn(2, 2, |i, j| match (i, j) {
                (0, 0) => C64::new(0.0, x[1].sin()),
                (0, 1) => C64::new(0.2, 0.1),
                (1, 0) => C64::new(-0.2, 0.1),
                _ => C64::new(0.0, -0.5),
            });
            vec![a0, diag_i(&[x[0].cos(), 0.3])]
        },
        |x| vec![C64::new(x[0].sin(), x[1].cos()), C64::new(0.4, x[0] * (2.0 * x[1]).sin())],
    )?;
    identity_records(&mut out, "higgs/nonabelian-sphere", &b, &cap)?;

    let lam = spec.lambda.unwrap_or(3.0);
    out.push(Record::check(
        "higgs/ehc/flat-torus",
        "ehc",
        ehc_action(&torus, lam),
        lam * volume(&torus),
        Provenance::ClosedForm,
        1e-9,
    ));
    let zone = Geometry::new(presets::sphere_cap(1.0, 0.2, 257, 16)?, order)?;
    out.push(Record::check(
        "higgs/ehc/sphere-zone",
        "ehc",
        ehc_action(&zone, 0.0),
        2.0 * presets::zone_area(1.0, 0.2),
        Provenance::ClosedForm,
        1e-3,
    ));

    let patch = Arc::new(Geometry::new(presets::flat_patch(2, 0, spec.nodes, 0.0, 1.0)?, order)?);
    let area = volume(&patch);
    let (f, c) = (spec.flux, spec.rate);
    let bundle = HiggsBundle::from_fn(
        &patch,
        CMat::identity(2),
        |x| vec![diag_i(&[0.0, c]), diag_i(&[f * x[0], 0.0])],
        |x| vec![C64::new(0.0, 0.0), C64::from_polar(0.9, -c * x[0])],
    )?;
    let psi = SectionField::from_fn(4, patch.len(), |q| {
        let x = patch.grid().coords(q);
        let e = C64::from_polar(1.0, 2.0 * PI * x[1]);
        vec![e, e * C64::new(0.0, 1.0), C64::new(0.0, 0.0), e * 0.5]
    })?;
    let zero = HiggsBundle::trivial(&patch, 1, |_| vec![C64::new(0.0, 0.0)])?;
    let wave = HiggsBundle::trivial(&patch, 1, |x| vec![C64::new((3.0 * x[0]).sin(), x[1] * x[1])])?;
    for &e in &s.eps {
        let eps = sign(e);
        let name = format!("higgs/table/eps{}", tag(eps));
        let r = gauge_higgs_report(&patch, eps, &bundle, Some(&psi), spec.lambda)?;
        for (term, v) in [
            ("fermion-re", r.fermion.re),
            ("fermion-im", r.fermion.im),
            ("higgs", r.higgs),
            ("ym", r.ym),
            ("gravity", r.gravity),
            ("total-re", r.total.re),
        ] {
            out.push(Record::info(format!("{name}/{term}"), "totdiractionres2", v, 0.0));
        }
        let parts = r.fermion + r.higgs + r.ym + r.gravity;
        out.push(Record::below(
            format!("{name}/sum-of-parts"),
            "totdiractionres2",
            (r.total - parts).norm(),
            Provenance::Identity,
            1e-9,
        ));
        out.push(Record::below(format!("{name}/parallel-section"), "totdiractionres2", r.higgs.abs(), Provenance::ClosedForm, 1e-8));
        out.push(Record::check(
            format!("{name}/flux"),
            "totdiractionres2",
            r.ym,
            2.0 * f * f * area,
            Provenance::ClosedForm,
            1e-9,
        ));
        out.push(Record::check(
            format!("{name}/gravity"),
            "totdiractionres2",
            r.gravity,
            r.lambda * area,
            Provenance::ClosedForm,
            1e-9,
        ));
        let z = gauge_higgs_report(&patch, eps, &zero, None, spec.lambda)?;
        out.push(Record::below(
            format!("{name}/zero-fields"),
            "totdiractionres2",
            (z.total.re - z.lambda * area).abs() + z.total.im.abs() + z.higgs.abs() + z.ym.abs(),
            Provenance::ClosedForm,
            1e-9,
        ));
        let base = gauge_higgs_report(&patch, eps, &wave, None, spec.lambda)?;
        let scaled = gauge_higgs_report(&patch, eps, &wave.scaled_section(2.5), None, spec.lambda)?;
        out.push(Record::check(
            format!("{name}/quadratic-scaling"),
            "hkt",
            scaled.higgs / base.higgs,
            6.25,
            Provenance::ClosedForm,
            1e-10,
        ));
        out.push(Record::check(
            format!("{name}/scaling-keeps-lambda"),
            "hkt",
            scaled.gravity,
            base.gravity,
            Provenance::Identity,
            0.0,
        ));
    }
    Ok(out)
}
