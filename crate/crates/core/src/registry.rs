//! Built-in examples and their verification runs.

use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::artrans::{inverse_translate, translate};
use crate::builtin;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::explorer::{closure_from_classes, indecomposable_classes, is_submodule_closed};
use crate::ffla::{Field, Matrix};
use crate::grmeasure::{gr_measure, gr_submodule, GRMeasure};
use crate::presentation::{projective, AlgebraPresentation};
use crate::repcore::{is_indecomposable, iso_test, kernels_agree, push_down, y_module, Representation};
use crate::tame::{
    dims_i64, euler_data, kerner_takane_check, knit_dim_vectors, lemma1_scan, lemma2_scan, preprojectives,
    Lemma2Outcome,
};

pub const SCHEMA: &str = "roiter/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// A fixed published value or statement.
    Reference,
    Trivial,
    /// Computed independently and cross-checked.
    Derived,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    SkippedAtCap,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub kind: Kind,
    pub status: Status,
    pub detail: String,
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub schema: &'static str,
    pub id: String,
    pub checks: Vec<CheckResult>,
    pub caps: Caps,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn skipped(&self) -> usize {
        self.checks.iter().filter(|c| c.status == Status::SkippedAtCap).count()
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExampleSummary {
    pub id: &'static str,
    pub algebra: &'static str,
    pub quiver: &'static str,
    pub description: &'static str,
}

pub fn list_examples() -> Vec<ExampleSummary> {
    vec![
        ExampleSummary {
            id: "example1-kt",
            algebra: "k2",
            quiver: "1 => 2 (arrows a, b)",
            description: "cogeneration of preprojectives tau^-i P' by tau^-j P for large j",
        },
        ExampleSummary {
            id: "example2-tame",
            algebra: "k2",
            quiver: "1 => 2 (arrows a, b); d4 for the defect -2 scan",
            description: "maps from defect -1 preprojectives are mono or epi; surjections onto defect -1 preprojectives",
        },
        ExampleSummary {
            id: "example3-k3",
            algebra: "k3",
            quiver: "1 => 2 (arrows a, b, c)",
            description: "preprojectives of K(3)/I_a for distinct points a of P^2 meet only in semisimple projectives",
        },
        ExampleSummary {
            id: "example4-covering",
            algebra: "example4",
            quiver: "a <= b <= c (alpha, alpha'; beta, beta')",
            description: "modules covered by Y_n, their measures (1,3,7) and (1,3,7,12), the (3,2,0) module",
        },
        ExampleSummary {
            id: "remark-zero-relation",
            algebra: "remark",
            quiver: "a <- b <= c (alpha; beta, beta') with beta.alpha = 0",
            description: "the modules with zero component at a form an infinite submodule-closed family",
        },
    ]
}

/// Switches for the alternative variants of some examples.
#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    /// Run the cogeneration check on K(3) as well (with smaller orbit depths).
    pub with_k3: bool,
    /// Use the zero relation on `beta'` instead of `beta` in the remark example.
    pub remark_alternate: bool,
}

struct Runner {
    checks: Vec<CheckResult>,
}

impl Runner {
    fn run(&mut self, name: &str, kind: Kind, body: impl FnOnce() -> Result<(bool, String)>) {
        let start = Instant::now();
        let (status, detail) = match body() {
            Ok((true, d)) => (Status::Pass, d),
            Ok((false, d)) => (Status::Fail, d),
            Err(e) if e.is_cap() => (Status::SkippedAtCap, e.to_string()),
            Err(e) => (Status::Fail, format!("error: {e}")),
        };
        self.checks.push(CheckResult {
            name: name.to_string(),
            kind,
            status,
            detail,
            millis: start.elapsed().as_millis(),
        });
    }
}

pub fn verify(id: &str, caps: &Caps) -> Result<VerifyReport> {
    verify_with(id, caps, &VerifyOptions::default())
}

pub fn verify_with(id: &str, caps: &Caps, opts: &VerifyOptions) -> Result<VerifyReport> {
    let mut r = Runner { checks: Vec::new() };
    match id {
        "example1-kt" => example1(&mut r, opts),
        "example2-tame" => example2(&mut r, caps),
        "example3-k3" => example3(&mut r, caps),
        "example4-covering" => example4(&mut r, caps),
        "remark-zero-relation" => remark(&mut r, caps, opts),
        _ => return Err(Error::Precondition(format!("unknown example id {id:?}"))),
    }
    Ok(VerifyReport { schema: SCHEMA, id: id.to_string(), checks: r.checks, caps: caps.clone() })
}

fn example1(r: &mut Runner, opts: &VerifyOptions) {
    let k2 = builtin::k2();
    r.run("k2: P(2) cogenerated by tau^-j P(2) for j in 0..=3", Kind::Derived, || {
        let rep = kerner_takane_check(&k2, 0, 3)?;
        let row = rep.rows.iter().find(|x| x.p == "2" && x.p_prime == "2" && x.i == 0).expect("row exists");
        Ok((row.n == Some(0), format!("{:?}", row.cogenerated)))
    });
    r.run("k2: n(1) exists with jmax = 4", Kind::Derived, || {
        let rep = kerner_takane_check(&k2, 1, 4)?;
        let ns: Vec<String> =
            rep.rows.iter().map(|x| format!("({},{},i={}): {:?}", x.p, x.p_prime, x.i, x.n)).collect();
        Ok((rep.all_found(), ns.join("; ")))
    });
    r.run("k2: knitted dimension vectors agree with tau^- through j = 4", Kind::Derived, || {
        let rows = knit_dim_vectors(&k2, 4)?;
        let mut ok = true;
        for v in 0..2 {
            let mut x = projective(&k2, v);
            for j in 0..=4 {
                let knit = rows.iter().find(|r| r.vertex == v && r.j == j).map(|r| r.dims.clone());
                ok &= knit == Some(dims_i64(&x));
                x = inverse_translate(&x);
            }
        }
        Ok((ok, format!("{} knitted rows", rows.len())))
    });
    if opts.with_k3 {
        let k3 = builtin::k3();
        r.run("k3: n(0) exists with jmax = 2", Kind::Derived, || {
            let rep = kerner_takane_check(&k3, 0, 2)?;
            let ns: Vec<String> = rep.rows.iter().map(|x| format!("({},{}): {:?}", x.p, x.p_prime, x.n)).collect();
            Ok((rep.all_found(), ns.join("; ")))
        });
    }
}

fn example2(r: &mut Runner, caps: &Caps) {
    let k2 = builtin::k2();
    r.run("k2: lemma 1 has no counterexample up to length 4", Kind::Reference, || {
        let classes = indecomposable_classes(&k2, 4, caps)?;
        let rep = lemma1_scan(&k2, &classes, caps)?;
        let ok = rep.counterexamples.is_empty() && rep.ambiguous.is_empty() && rep.skipped == 0;
        Ok((
            ok,
            format!(
                "{} preprojectives, {} regulars, {} maps checked, {} counterexamples",
                rep.preprojectives,
                rep.regulars,
                rep.maps_checked,
                rep.counterexamples.len()
            ),
        ))
    });
    r.run("k2: lemma 2 witness for P(1) (defect -1) is the identity", Kind::Reference, || {
        let p = projective(&k2, 0);
        let out = lemma2_scan(&k2, &p, &[], caps)?;
        Ok((
            matches!(&out, Lemma2Outcome::Witness { maps, .. } if maps.len() == 1 && maps[0].is_iso()),
            "trivial witness".into(),
        ))
    });
    r.run("k2: defects of indecomposables lie in {-1, 0, 1} up to length 6", Kind::Derived, || {
        let data = euler_data(&k2)?;
        let classes = indecomposable_classes(&k2, 6, caps)?;
        let ds: Vec<i64> = classes.iter().map(|x| data.defect_of(&dims_i64(x)).expect("affine")).collect();
        Ok((ds.iter().all(|d| (-1..=1).contains(d)), format!("{} classes", classes.len())))
    });
    let d4 = builtin::d4();
    r.run("d4: defects of indecomposables lie in [-6, 6] up to length 6", Kind::Reference, || {
        let data = euler_data(&d4)?;
        let classes = indecomposable_classes(&d4, 6, caps)?;
        let ds: Vec<i64> = classes.iter().map(|x| data.defect_of(&dims_i64(x)).expect("affine")).collect();
        let (lo, hi) = (ds.iter().min().copied().unwrap_or(0), ds.iter().max().copied().unwrap_or(0));
        Ok((lo >= -6 && hi <= 6, format!("{} classes, defects in [{lo}, {hi}]", classes.len())))
    });
    r.run("d4: lemma 2 on the defect -2 preprojectives up to length 7 (regression data)", Kind::Derived, || {
        let data = euler_data(&d4)?;
        let pre: Vec<Representation> = preprojectives(&d4, 7).into_iter().map(|t| t.2).collect();
        let mut lines = Vec::new();
        for p in pre.iter().filter(|p| data.defect_of(&dims_i64(p)) == Some(-2)) {
            let out = lemma2_scan(&d4, p, &pre, caps)?;
            lines.push(match out {
                Lemma2Outcome::Witness { targets, .. } => format!(
                    "{:?}: witness onto {:?}",
                    p.dims(),
                    targets.iter().map(|t| t.dims().to_vec()).collect::<Vec<_>>()
                ),
                Lemma2Outcome::NotFound { tuples_searched, .. } => {
                    format!("{:?}: not found ({tuples_searched} tuples)", p.dims())
                }
            });
        }
        Ok((true, lines.join("; ")))
    });
}

/// A basis `t1, t2` of `{t in F^3 : a · t = 0}`.
fn annihilator_basis(f: Field, a: [u8; 3]) -> Result<(Vec<u8>, Vec<u8>)> {
    let m = Matrix::from_rows(f, &[a.to_vec()])?;
    let k = m.kernel_basis();
    if k.len() != 2 {
        return Err(Error::Precondition(format!("{a:?} is not a point of P^2")));
    }
    Ok((k[0].clone(), k[1].clone()))
}

/// The K(3)-module annihilated by `a0 a + a1 b + a2 c` corresponding to a K(2)-module
/// `x` (arrows acting as `t1_k x(a) + t2_k x(b)` on the `k`-th arrow of K(3)).
pub fn k3_from_k2(k3: &Arc<AlgebraPresentation>, a: [u8; 3], x: &Representation) -> Result<Representation> {
    let f = k3.field();
    let (t1, t2) = annihilator_basis(f, a)?;
    let maps = (0..3).map(|k| x.map(0).scaled(t1[k]).add(&x.map(1).scaled(t2[k]))).collect();
    Representation::new(k3.clone(), x.dims().to_vec(), maps)
}

/// The class `C_a` up to length `max_len`: preprojective `K(3)/I_a`-modules as K(3)-modules.
pub fn example3_class(a: [u8; 3], max_len: usize) -> Result<Vec<Representation>> {
    let k2 = builtin::k2();
    let k3 = builtin::k3();
    preprojectives(&k2, max_len).into_iter().map(|(_, _, x)| k3_from_k2(&k3, a, &x)).collect()
}

fn example3(r: &mut Runner, caps: &Caps) {
    let points: [[u8; 3]; 3] = [[1, 0, 0], [0, 1, 0], [1, 1, 1]];
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            let name = format!("C_{a:?} and C_{b:?} meet in semisimple projectives up to length 7");
            r.run(&name, Kind::Reference, || {
                let ca = example3_class(*a, 7)?;
                let cb = example3_class(*b, 7)?;
                let mut common = Vec::new();
                for x in &ca {
                    for y in &cb {
                        if iso_test(x, y, caps)? {
                            common.push(x.clone());
                        }
                    }
                }
                let ok = !common.is_empty() && common.iter().all(|x| x.is_semisimple() && x.is_projective());
                Ok((ok, format!("|C_a| = {}, |C_b| = {}, common: {:?}", ca.len(), cb.len(), dims_of(&common))))
            });
        }
    }
    r.run("every C_a member is annihilated by I_a and indecomposable", Kind::Derived, || {
        let mut ok = true;
        for a in &points {
            for x in example3_class(*a, 7)? {
                let ann = (0..3).fold(Matrix::zeros(x.field(), x.dim(1), x.dim(0)), |acc, k| {
                    acc.add(&x.map(k).scaled(a[k]))
                });
                ok &= ann.is_zero() && is_indecomposable(&x, caps)?;
            }
        }
        Ok((ok, String::new()))
    });
}

fn dims_of(xs: &[Representation]) -> Vec<Vec<usize>> {
    xs.iter().map(|x| x.dims().to_vec()).collect()
}

/// The Example 4 module with dimension vector `(3,2,0)`.
pub fn example4_module_320(alg: &Arc<AlgebraPresentation>) -> Result<Representation> {
    let f = alg.field();
    let q = alg.quiver();
    let mut maps: Vec<Matrix> = q.arrows().iter().map(|a| Matrix::zeros(f, [3, 2, 0][a.target], [3, 2, 0][a.source])).collect();
    maps[q.arrow_id("alpha")?] = Matrix::from_rows(f, &[vec![1, 0], vec![0, 1], vec![0, 0]])?;
    maps[q.arrow_id("alpha'")?] = Matrix::from_rows(f, &[vec![0, 0], vec![1, 0], vec![0, 1]])?;
    Representation::new(alg.clone(), vec![3, 2, 0], maps)
}

fn example4(r: &mut Runner, caps: &Caps) {
    let alg = builtin::example4();
    let measure_check = |n: usize, expected: &[u32]| -> Result<(bool, String)> {
        let (spec, y) = y_module(&alg, n)?;
        let x = push_down(&spec, &y)?;
        let mu = gr_measure(&x, caps)?;
        Ok((mu == GRMeasure::new(expected.to_vec())?, format!("measure {mu}")))
    };
    r.run("Y_1: measure (1,3,7)", Kind::Reference, || measure_check(1, &[1, 3, 7]));
    r.run("Y_2: measure (1,3,7,12)", Kind::Reference, || measure_check(2, &[1, 3, 7, 12]));
    r.run("Y_n: length 2+5n, top of length n, n = 1..3", Kind::Reference, || {
        let mut ok = true;
        let mut parts = Vec::new();
        for n in 1..=3 {
            let (spec, y) = y_module(&alg, n)?;
            let x = push_down(&spec, &y)?;
            let top: usize = x.top_dims().iter().sum();
            ok &= x.length() == 2 + 5 * n && top == n;
            parts.push(format!("n={n}: length {}, top {top}", x.length()));
        }
        Ok((ok, parts.join("; ")))
    });
    r.run("Y_n: alpha and alpha' have equal kernels, pushed-down modules indecomposable", Kind::Reference, || {
        let mut ok = true;
        for n in 1..=3 {
            let (spec, y) = y_module(&alg, n)?;
            let x = push_down(&spec, &y)?;
            ok &= kernels_agree(&y) && kernels_agree(&x) && is_indecomposable(&x, caps)?;
        }
        Ok((ok, String::new()))
    });
    r.run("Y_1 pushes down to P(c)", Kind::Derived, || {
        let (spec, y) = y_module(&alg, 1)?;
        let x = push_down(&spec, &y)?;
        let pc = projective(&alg, alg.vertex("c")?);
        Ok((iso_test(&x, &pc, caps)?, format!("dims {:?}", x.dims())))
    });
    r.run("GR submodule of P(c) has length 3 and measure (1,3)", Kind::Derived, || {
        let pc = projective(&alg, alg.vertex("c")?);
        let (sub, mu) = gr_submodule(&pc, caps)?;
        Ok((sub.length() == 3 && mu == GRMeasure::new(vec![1, 3])?, format!("{:?} {mu}", sub.dims())))
    });
    r.run("(3,2,0) module: indecomposable; restriction to a,b neither projective nor semisimple", Kind::Reference, || {
        let x = example4_module_320(&alg)?;
        let ind = is_indecomposable(&x, caps)?;
        let res = x.restrict(&[alg.vertex("a")?, alg.vertex("b")?])?;
        let res_ind = is_indecomposable(&res, caps)?;
        let ok = ind && res_ind && !res.is_projective() && !res.is_semisimple();
        Ok((
            ok,
            format!(
                "indecomposable {ind}; restriction indecomposable {res_ind}, projective {}, semisimple {}",
                res.is_projective(),
                res.is_semisimple()
            ),
        ))
    });
}

fn remark(r: &mut Runner, caps: &Caps, opts: &VerifyOptions) {
    let alg = builtin::remark(opts.remark_alternate);
    let (a, b, c) = match (alg.vertex("a"), alg.vertex("b"), alg.vertex("c")) {
        (Ok(a), Ok(b), Ok(c)) => (a, b, c),
        _ => unreachable!("builtin remark algebra has vertices a, b, c"),
    };
    let lengths = [3usize, 5, 7];
    let mut counts: Vec<Option<usize>> = Vec::new();
    for &l in &lengths {
        let name = format!("closure of the X_a = 0 seeds at length {l} is submodule-closed and avoids a");
        let mut count = None;
        r.run(&name, Kind::Reference, || {
            let classes = indecomposable_classes(&alg, l, caps)?;
            let seeds: Vec<Representation> = classes
                .iter()
                .filter(|x| x.dim(a) == 0 && x.dim(b) == x.dim(c) + 1)
                .cloned()
                .collect();
            let snap = closure_from_classes(&alg, &classes, &seeds, l, caps)?;
            let closed = is_submodule_closed(&snap, caps)?.is_none();
            let avoids = snap.members.iter().all(|x| x.dim(a) == 0);
            count = Some(snap.len());
            Ok((closed && avoids, format!("{} seeds, {} members, counts {:?}", seeds.len(), snap.len(), snap.counts_by_length())))
        });
        counts.push(count);
    }
    r.run("closure keeps growing across length bounds 3, 5, 7", Kind::Reference, || {
        if counts.iter().any(Option::is_none) {
            return Err(Error::cap("remark closure", "a closure run did not complete"));
        }
        let cs: Vec<usize> = counts.iter().map(|c| c.expect("checked")).collect();
        Ok((cs.windows(2).all(|w| w[0] < w[1]), format!("{cs:?}")))
    });
    r.run("every seed up to length 7 reaches a projective under repeated tau", Kind::Derived, || {
        let classes = indecomposable_classes(&alg, 7, caps)?;
        let mut steps = Vec::new();
        for x in classes.iter().filter(|x| x.dim(a) == 0 && x.dim(b) == x.dim(c) + 1) {
            let mut y = x.clone();
            let mut k = 0;
            while !y.is_zero() && !y.is_projective() && k <= x.length() {
                y = translate(&y);
                k += 1;
            }
            if y.is_zero() || !y.is_projective() {
                return Ok((false, format!("{:?} is not preprojective", x.dims())));
            }
            steps.push(k);
        }
        Ok((true, format!("steps {steps:?}")))
    });
    r.run("the algebra has faithful indecomposables up to length 7", Kind::Reference, || {
        let classes = indecomposable_classes(&alg, 7, caps)?;
        let faithful = classes.iter().filter(|x| x.dims().iter().all(|&d| d > 0)).count();
        Ok((faithful > 0, format!("{faithful} sincere classes")))
    });
}

/// Machine-readable report.
pub fn report_json(rep: &VerifyReport) -> Value {
    json!(rep)
}
