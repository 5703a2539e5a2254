use jthresh::catalog::{self, ross_gamma_closed_form, CatalogEntry, Params};
use jthresh::document::{InputDocument, QuerySpec};
use jthresh::lattice::DivClass;
use jthresh::numeric::{format_decimal, parse_rat, QuadNum, Rat};
use jthresh::surface::{
    csck_criterion, default_grid, is_solvable, path_r, sample_path, stable_subcone, surface_gamma,
    Status, SubconeOutcome,
};
use jthresh::toric::{toric_gamma as run_toric_gamma, Intersector, ToricClass};
use jthresh::Error;

use crate::report::{CsvRow, ResultDocument};
use crate::{Ctx, Failure, Pair};

const DEFAULT_SAMPLES: u32 = 100;

fn load(ctx: &Ctx) -> Result<InputDocument, Failure> {
    let text = match &ctx.input {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| Failure::input("InputUnreadable", format!("{}: {}", p.display(), e)))?,
        _ => String::from_utf8(ctx.stdin.to_vec())
            .map_err(|_| Failure::input("InvalidDocument", "stdin is not UTF-8"))?,
    };
    let doc = InputDocument::from_json(&text)?;
    doc.validate()?;
    Ok(doc)
}

fn query(doc: &InputDocument) -> QuerySpec {
    doc.query.clone().unwrap_or_default()
}

fn pick(flag: &Option<String>, from_query: Option<String>, fallback: &str) -> String {
    flag.clone()
        .or(from_query)
        .unwrap_or_else(|| fallback.to_string())
}

fn inline_coords(label: &str) -> Option<Vec<Rat>> {
    if !label.contains(',') && parse_rat(label).is_err() {
        return None;
    }
    label.split(',').map(|c| parse_rat(c).ok()).collect()
}

fn lattice_class(doc: &InputDocument, label: &str) -> Result<DivClass, Failure> {
    match doc.lattice_class(label) {
        Err(Error::UnknownClass(_)) => match inline_coords(label) {
            Some(v) => {
                let c = DivClass::new(v);
                doc.lattice()?.check_rank(&c)?;
                Ok(c)
            }
            None => Err(Error::UnknownClass(label.to_string()).into()),
        },
        other => Ok(other?),
    }
}

fn toric_class(doc: &InputDocument, label: &str) -> Result<ToricClass, Failure> {
    match doc.toric_class(label) {
        Err(Error::UnknownClass(_)) => match inline_coords(label) {
            Some(v) => Ok(ToricClass::new(v)),
            None => Err(Error::UnknownClass(label.to_string()).into()),
        },
        other => Ok(other?),
    }
}

fn status_caveat(r: &mut ResultDocument, status: Status) {
    match status {
        Status::ConditionalExact => {
            r.caveat("theta is not Kähler; value < T is necessary for the value to be the threshold, equality is not asserted");
        }
        Status::Indeterminate => {
            r.caveat("theta is not Kähler and value >= T; no threshold is certified");
        }
        _ => {}
    }
}

pub(crate) fn gamma(ctx: &Ctx, p: &Pair) -> Result<ResultDocument, Failure> {
    let doc = load(ctx)?;
    let q = query(&doc);
    let s = doc.surface()?;
    let theta = lattice_class(&doc, &pick(&p.theta, q.theta, "theta"))?;
    let omega = lattice_class(&doc, &pick(&p.omega, q.omega, "omega"))?;
    let g = surface_gamma(&s, &theta, &omega)?;
    let mut r = ResultDocument::new("gamma", ctx.digits);
    r.status(g.status)
        .quad("value", &g.value)
        .rat("C", &g.audit.c)
        .quad("sigma", &g.audit.sigma)
        .quad("T", &g.audit.t)
        .flag("theta_kahler", g.audit.theta_kahler)
        .flag(
            "algebraic_threshold_coincides",
            g.algebraic_threshold_coincides(),
        )
        .label("sigma_facet", g.audit.sigma_facet)
        .label("T_facet", g.audit.t_facet);
    status_caveat(&mut r, g.status);
    Ok(r)
}

pub(crate) fn seshadri(ctx: &Ctx, p: &Pair) -> Result<ResultDocument, Failure> {
    let doc = load(ctx)?;
    let q = query(&doc);
    let s = doc.surface()?;
    let theta = lattice_class(&doc, &pick(&p.theta, q.theta, "theta"))?;
    let omega = lattice_class(&doc, &pick(&p.omega, q.omega, "omega"))?;
    let b = s.seshadri_t(&theta, &omega)?;
    let mut r = ResultDocument::new("seshadri", ctx.digits);
    r.quad("T", &b.value).label("facet", b.facet);
    Ok(r)
}

pub(crate) fn sigma(ctx: &Ctx, p: &Pair) -> Result<ResultDocument, Failure> {
    let doc = load(ctx)?;
    let q = query(&doc);
    let s = doc.surface()?;
    let theta = lattice_class(&doc, &pick(&p.theta, q.theta, "theta"))?;
    let omega = lattice_class(&doc, &pick(&p.omega, q.omega, "omega"))?;
    let b = s.sigma_inf(&theta, &omega)?;
    let mut r = ResultDocument::new("sigma", ctx.digits);
    r.quad("sigma", &b.value).label("facet", b.facet);
    Ok(r)
}

pub(crate) fn solvable(ctx: &Ctx, p: &Pair) -> Result<ResultDocument, Failure> {
    let doc = load(ctx)?;
    let q = query(&doc);
    let s = doc.surface()?;
    let theta = lattice_class(&doc, &pick(&p.theta, q.theta, "theta"))?;
    let omega = lattice_class(&doc, &pick(&p.omega, q.omega, "omega"))?;
    let ok = is_solvable(&s, &theta, &omega)?;
    let c = jthresh::surface::c_constant(s.lattice(), &theta, &omega)?;
    let mut r = ResultDocument::new("solvable", ctx.digits);
    r.rat("C", &c).flag("solvable", ok).label(
        "difference",
        omega.combine(&c, &theta, &Rat::from_integer((-1).into())),
    );
    Ok(r)
}

pub(crate) fn path(
    ctx: &Ctx,
    theta: &Option<String>,
    a: &Option<String>,
    samples: Option<u32>,
) -> Result<(ResultDocument, Vec<CsvRow>), Failure> {
    let doc = load(ctx)?;
    let q = query(&doc);
    let s = doc.surface()?;
    let theta = lattice_class(&doc, &pick(theta, q.theta, "theta"))?;
    let a = lattice_class(&doc, &pick(a, q.a, "a"))?;
    let n = samples.or(q.samples).unwrap_or(DEFAULT_SAMPLES);
    if n == 0 {
        return Err(Failure::input("BadParams", "--samples must be at least 1"));
    }
    let analysis = path_r(&s, &theta, &a)?;
    let sweep = sample_path(&s, &theta, &a, &default_grid(n))?;
    let mut r = ResultDocument::new("path", ctx.digits);
    for k in 0..3 {
        r.rat(&format!("R_coeff_{}", k), &analysis.numerator.coeff(k));
    }
    r.rat("a_selfint", &analysis.a_selfint)
        .rat("theta_selfint", &analysis.theta_selfint)
        .label("numerator", &analysis.numerator)
        .label("samples", n);
    let set: Vec<String> = analysis
        .solvable_set
        .iter()
        .map(|i| i.to_string())
        .collect();
    r.label(
        "solvable_set",
        if set.is_empty() {
            "empty".to_string()
        } else {
            set.join(" U ")
        },
    );
    for (i, iv) in analysis.solvable_set.iter().enumerate() {
        r.quad(&format!("solvable_set[{}].lo", i), &iv.lo)
            .quad(&format!("solvable_set[{}].hi", i), &iv.hi);
    }
    let mut rows = Vec::with_capacity(sweep.len());
    for smp in &sweep {
        let dec = format_decimal(smp.value.to_f64(), ctx.digits);
        let row = CsvRow {
            t: smp.t.to_string(),
            numerator: smp.numerator.to_string(),
            value: smp.value.to_string(),
            solvable: smp.solvable,
            decimal: dec,
        };
        r.rows.push(
            [
                ("t", row.t.clone()),
                ("R_numerator", row.numerator.clone()),
                ("gamma_value", row.value.clone()),
                (
                    "solvable",
                    (if row.solvable { "1" } else { "0" }).to_string(),
                ),
            ]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
        );
        rows.push(row);
    }
    Ok((r, rows))
}

pub(crate) fn stable_cone(
    ctx: &Ctx,
    theta: &Option<String>,
    a: &Option<String>,
) -> Result<ResultDocument, Failure> {
    let doc = load(ctx)?;
    let q = query(&doc);
    let s = doc.surface()?;
    let theta = lattice_class(&doc, &pick(theta, q.theta, "theta"))?;
    let a = lattice_class(&doc, &pick(a, q.a, "a"))?;
    let mut r = ResultDocument::new("stable-cone", ctx.digits);
    match stable_subcone(&s, &theta, &a)? {
        SubconeOutcome::Perfect => {
            r.status("Perfect");
            r.caveat("a^2 = 0: every Kähler class on the segment is stable");
        }
        SubconeOutcome::Subcone(sc) => {
            r.status("Subcone")
                .rat("boundary_t", &sc.boundary_t)
                .quad("normalization", &sc.normalization)
                .label("boundary_ray", &sc.boundary_ray);
            for (i, x) in sc.boundary_ray.coords().iter().enumerate() {
                r.quad(&format!("boundary_ray[{}]", i), x);
            }
        }
    }
    Ok(r)
}

pub(crate) fn toric_gamma(ctx: &Ctx, p: &Pair) -> Result<ResultDocument, Failure> {
    let doc = load(ctx)?;
    let q = query(&doc);
    let fan = doc.fan()?;
    let theta = toric_class(&doc, &pick(&p.theta, q.theta, "theta"))?;
    let omega = toric_class(&doc, &pick(&p.omega, q.omega, "omega"))?;
    let mut eng = Intersector::new(&fan);
    let g = run_toric_gamma(&mut eng, &theta, &omega)?;
    let mut r = ResultDocument::new("toric-gamma", ctx.digits);
    r.status(g.status)
        .rat("value", &g.value)
        .rat("C", &g.c)
        .rat("T", &g.t)
        .flag("theta_ample", g.theta_ample)
        .label("minimizer", format!("{:?}", g.minimizer))
        .label("T_wall", format!("{:?}", g.t_wall));
    for sc in &g.scores {
        r.rows.push(
            [
                ("cone", format!("{:?}", sc.cone)),
                ("dim", sc.p.to_string()),
                ("numerator", sc.numerator.to_string()),
                ("denominator", sc.denominator.to_string()),
                ("score", sc.value.to_string()),
            ]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
        );
    }
    status_caveat(&mut r, g.status);
    r.caveat(
        "toric automorphism groups are not discrete; cscK readings of this value do not apply",
    );
    Ok(r)
}

pub(crate) fn csck(
    ctx: &Ctx,
    minus_c1: &Option<String>,
    omega: &Option<String>,
    alpha: &Option<String>,
) -> Result<ResultDocument, Failure> {
    let doc = load(ctx)?;
    let q = query(&doc);
    let s = doc.surface()?;
    let mc1 = lattice_class(&doc, &pick(minus_c1, q.minus_c1, "minus_c1"))?;
    let omega = lattice_class(&doc, &pick(omega, q.omega, "omega"))?;
    let alpha = match (alpha, q.alpha) {
        (Some(a), _) => parse_rat(a)?,
        (None, Some(a)) => a.0,
        (None, None) => return Err(Failure::input("BadParams", "--alpha is required")),
    };
    let rep = csck_criterion(&s, &mc1, &omega, &alpha)?;
    let mut r = ResultDocument::new("csck", ctx.digits);
    r.quad("lhs", &rep.lhs)
        .rat("rhs", &rep.rhs)
        .rat("alpha", &alpha)
        .flag("holds", rep.holds)
        .caveat(rep.caveat);
    Ok(r)
}

pub(crate) fn catalog_params(
    name: &str,
    g: &Option<String>,
    s_c: &Option<String>,
    t: &Option<String>,
    a: &Option<String>,
    rank: &Option<String>,
) -> Result<Params, Failure> {
    let mut p = Params::new();
    for (key, v) in [("g", g), ("t", t), ("a", a), ("rank", rank)] {
        if let Some(v) = v {
            p.insert(key.to_string(), parse_rat(v)?);
        }
    }
    if let Some(v) = s_c {
        match parse_rat(v) {
            Ok(x) => {
                p.insert("sC".into(), x);
            }
            Err(_) if name == "ross" => {}
            Err(e) => return Err(e.into()),
        }
    }
    Ok(p)
}

pub(crate) fn catalog_export(name: &str, params: &Params) -> Result<Vec<u8>, Failure> {
    let entry = catalog::build(name, params)?;
    let mut text = InputDocument::from_catalog(&entry).to_json();
    text.push('\n');
    Ok(text.into_bytes())
}

fn describe(r: &mut ResultDocument, entry: &CatalogEntry) {
    let l = entry.lattice();
    r.label("signature", l.signature()).label("rank", l.rank());
    for (k, v) in &entry.params {
        r.rat(&format!("param.{}", k), v);
    }
    for (k, c) in &entry.named_classes {
        r.label(&format!("class.{}", k), c);
    }
    for (i, f) in entry.facet_labels.iter().enumerate() {
        r.label(&format!("facet.{}", i), f);
    }
    for &i in &entry.model_facets {
        r.caveat(format!(
            "facet {} ({}) bounds an inner model of the nef cone; results are exact for the model",
            i, entry.facet_labels[i]
        ));
    }
    if let Some(t) = &entry.toric {
        r.label("fan.rays", format!("{:?}", t.fan.rays()));
        for (k, c) in &t.named {
            r.label(&format!("toric.{}", k), c);
        }
    }
}

pub(crate) fn catalog(
    ctx: &Ctx,
    name: &str,
    g: &Option<String>,
    s_c: &Option<String>,
    t: &Option<String>,
    a: &Option<String>,
    rank: &Option<String>,
) -> Result<ResultDocument, Failure> {
    let params = catalog_params(name, g, s_c, t, a, rank)?;
    let mut r = ResultDocument::new("catalog", ctx.digits);
    r.label("name", name);
    if name == "ross" {
        if let Some(raw) = s_c.as_ref().filter(|_| !params.contains_key("sC")) {
            return ross_closed_form_only(r, &params, raw);
        }
    }
    let entry = catalog::build(name, &params)?;
    describe(&mut r, &entry);
    if name == "ross" {
        if let (Some(t), Some(l)) = (params.get("t"), entry.named_classes.get("L")) {
            let k = entry.class("K")?;
            let g = surface_gamma(&entry.surface, k, l)?;
            let closed =
                ross_gamma_closed_form(&params["g"], &QuadNum::from_rat(params["sC"].clone()), t)?;
            r.status(g.status)
                .quad("value", &g.value)
                .quad("closed_form", &closed)
                .rat("C", &g.audit.c)
                .quad("sigma", &g.audit.sigma)
                .quad("T", &g.audit.t)
                .flag("pipeline_matches_closed_form", closed == g.value);
            status_caveat(&mut r, g.status);
        }
    }
    Ok(r)
}

/// `sC` given as a surd such as `sqrt(5)`: no finite cone model, closed form only.
fn ross_closed_form_only(
    mut r: ResultDocument,
    params: &Params,
    raw: &str,
) -> Result<ResultDocument, Failure> {
    let s_c: QuadNum = raw.parse()?;
    let g = params
        .get("g")
        .ok_or_else(|| Failure::input("BadParams", "missing parameter g"))?;
    let t = params
        .get("t")
        .ok_or_else(|| Failure::input("BadParams", "an irrational sC needs --t"))?;
    let closed = ross_gamma_closed_form(g, &s_c, t)?;
    r.quad("closed_form", &closed)
        .quad("param.sC", &s_c)
        .rat("param.g", g)
        .rat("param.t", t)
        .caveat("irrational sC has no rational cone model; only the closed form is evaluated");
    Ok(r)
}

pub(crate) fn validate(ctx: &Ctx) -> Result<ResultDocument, Failure> {
    let doc = load(ctx)?;
    let mut r = ResultDocument::new("validate", ctx.digits);
    r.status("valid");
    if doc.lattice.is_some() {
        let l = doc.lattice()?;
        r.label("rank", l.rank()).label("signature", l.signature());
    }
    if doc.cone.is_some() {
        let s = doc.surface()?;
        r.label("facets", s.cone().facets().len())
            .flag("light_cone", s.cone().light_cone().is_some());
    }
    if doc.fan.is_some() {
        let f = doc.fan()?;
        r.label("fan.dim", f.dim())
            .label("fan.rays", f.num_rays())
            .label("fan.max_cones", f.max_cones().len())
            .label("fan.orbits", f.enumerate_orbits().len());
    }
    r.label("classes", doc.classes.len());
    Ok(r)
}
