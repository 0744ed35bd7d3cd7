use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;

use johnson_snf::linalg::text::{from_text, to_text};
use johnson_snf::linalg::{smith_normal_form, AbelianGroup, IntMatrix};
use johnson_snf::oracle::{
    bench, brute_force_group, scheme_matrix, verify_closed_form, BenchReport, Subject, Theorem,
    Timing, VerificationReport,
};
use johnson_snf::scheme::{bier_p, e_matrices, eigenvalues, ms_matrices, smith_group, w_matrix};
use johnson_snf::superstandard::{check_conjecture, p_tilde, ConjectureReport};
use johnson_snf::{json_int, Error, SchemeElement};
use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::element::Describe;
use crate::{
    usage, BenchArgs, CliError, Command, ConjectureArgs, ExportArgs, SnfArgs, VerifyArgs, Which,
};

type Res = Result<(), CliError>;

const BLOCK_REDUCTION: &str = "block reduction of the Smith group";

pub(crate) fn dispatch(cmd: &Command, json: bool, out: &mut String) -> Res {
    match cmd {
        Command::SmithGroup(a) => smith(&a.to_element()?, json, out),
        Command::DiagonalForm(a) => diagonal_form(&a.to_element()?, json, out),
        Command::Ms(a) => ms(&a.to_element()?, json, out),
        Command::Eigenvalues(a) => spectrum(&a.to_element()?, json, out),
        Command::Oracle { element, cap } => oracle(&element.to_element()?, *cap, json, out),
        Command::Verify(a) => verify(a, json, out),
        Command::Conjecture(a) => conjecture(a, json, out),
        Command::ExportMatrix(a) => export(a, json, out),
        Command::Snf(a) => snf(a, json, out),
        Command::Bench(a) => run_bench(a, json, out),
    }
}

fn push_json(out: &mut String, v: &Value) {
    out.push_str(&serde_json::to_string_pretty(v).expect("values serialize"));
    out.push('\n');
}

fn push_json_line(out: &mut String, v: &Value) {
    out.push_str(&v.to_string());
    out.push('\n');
}

fn group_json(g: &AbelianGroup) -> Value {
    serde_json::to_value(g).expect("groups serialize")
}

fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(json_int).collect())
}

fn matrix_json(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| ints(m.row(i))).collect())
}

fn joined(v: &[BigInt], sep: &str) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

/// Rows with right-aligned columns, each line prefixed by `indent`.
fn render_matrix(m: &IntMatrix, indent: &str) -> String {
    let cells: Vec<Vec<String>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(ToString::to_string).collect())
        .collect();
    let widths: Vec<usize> = (0..m.cols())
        .map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(0))
        .collect();
    let mut s = String::new();
    for row in &cells {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        let _ = writeln!(s, "{indent}{}", line.join("  "));
    }
    s
}

fn smith(e: &SchemeElement, json: bool, out: &mut String) -> Res {
    let r = smith_group(e)?;
    if json {
        let blocks: Vec<Value> = r
            .blocks
            .iter()
            .map(|b| {
                json!({
                    "s": b.s,
                    "multiplicity": b.multiplicity,
                    "matrix": matrix_json(&b.matrix),
                    "diagonal": ints(&b.diagonal),
                    "rank": b.rank,
                })
            })
            .collect();
        push_json(
            out,
            &json!({
                "subject": Subject::of(e, None).to_json(),
                "group": group_json(&r.group),
                "group_text": r.group.to_string(),
                "blocks": blocks,
            }),
        );
        return Ok(());
    }
    let _ = writeln!(out, "element: {}", Describe(e));
    for b in &r.blocks {
        let _ = writeln!(
            out,
            "Δ(M_{}) ×{}: {}",
            b.s,
            b.multiplicity,
            joined(&b.diagonal, " ")
        );
    }
    let _ = writeln!(out, "group: {}", r.group);
    Ok(())
}

fn diagonal_form(e: &SchemeElement, json: bool, out: &mut String) -> Res {
    let r = smith_group(e)?;
    // Entry value -> multiplicity, nonzero values ascending and zero last.
    let mut pooled: Vec<(BigInt, u64)> = Vec::new();
    for b in &r.blocks {
        for d in &b.diagonal {
            match pooled.iter_mut().find(|(v, _)| v == d) {
                Some(slot) => slot.1 += b.multiplicity,
                None => pooled.push((d.clone(), b.multiplicity)),
            }
        }
    }
    pooled.sort_by(|(a, _), (b, _)| a.is_zero().cmp(&b.is_zero()).then(a.cmp(b)));
    if json {
        let entries: Vec<Value> = pooled
            .iter()
            .map(|(v, m)| json!({ "value": json_int(v), "multiplicity": m }))
            .collect();
        push_json(
            out,
            &json!({
                "subject": Subject::of(e, None).to_json(),
                "rows": e.rows(),
                "cols": e.cols(),
                "entries": entries,
                "group": group_json(&r.group),
            }),
        );
        return Ok(());
    }
    let _ = writeln!(out, "element: {}", Describe(e));
    let _ = writeln!(out, "size: {}x{}", e.rows(), e.cols());
    let _ = writeln!(out, "diagonal entries:");
    for (v, m) in &pooled {
        let _ = writeln!(out, "  {v} ×{m}");
    }
    let _ = writeln!(out, "group: {}", r.group);
    Ok(())
}

fn ms(e: &SchemeElement, json: bool, out: &mut String) -> Res {
    let blocks = ms_matrices(e)?;
    if json {
        let v: Vec<Value> = blocks
            .iter()
            .map(|b| json!({ "s": b.s, "multiplicity": b.multiplicity, "matrix": matrix_json(&b.matrix) }))
            .collect();
        push_json(
            out,
            &json!({ "subject": Subject::of(e, None).to_json(), "blocks": v }),
        );
        return Ok(());
    }
    let _ = writeln!(out, "element: {}", Describe(e));
    for b in &blocks {
        let _ = writeln!(out, "M_{} multiplicity {}", b.s, b.multiplicity);
        out.push_str(&render_matrix(&b.matrix, "  "));
    }
    Ok(())
}

fn spectrum(e: &SchemeElement, json: bool, out: &mut String) -> Res {
    let spec = eigenvalues(e)?;
    if json {
        let v: Vec<Value> = spec
            .iter()
            .map(|x| json!({ "eigenvalue": json_int(&x.eigenvalue), "multiplicity": x.multiplicity }))
            .collect();
        push_json(
            out,
            &json!({ "subject": Subject::of(e, None).to_json(), "spectrum": v }),
        );
        return Ok(());
    }
    let _ = writeln!(out, "element: {}", Describe(e));
    let width = spec
        .iter()
        .map(|x| x.eigenvalue.to_string().len())
        .max()
        .unwrap_or(0)
        .max("eigenvalue".len());
    let _ = writeln!(out, "{:>width$}  multiplicity", "eigenvalue");
    for x in &spec {
        let _ = writeln!(
            out,
            "{:>width$}  {}",
            x.eigenvalue.to_string(),
            x.multiplicity
        );
    }
    Ok(())
}

fn oracle(e: &SchemeElement, cap: u64, json: bool, out: &mut String) -> Res {
    let brute = brute_force_group(e, cap)?;
    let (structured, skipped) = match smith_group(e) {
        Ok(r) => (Some(r.group), None),
        Err(Error::InvalidParameters(m)) => (None, Some(m)),
        Err(other) => return Err(other.into()),
    };
    let agree = structured.as_ref().map(|g| *g == brute);
    if json {
        push_json(
            out,
            &json!({
                "subject": Subject::of(e, None).to_json(),
                "oracle": group_json(&brute),
                "structured": structured.as_ref().map(group_json),
                "structured_skipped": skipped,
                "agree": agree,
            }),
        );
    } else {
        let _ = writeln!(out, "element: {}", Describe(e));
        let _ = writeln!(out, "size: {}x{}", e.rows(), e.cols());
        let _ = writeln!(out, "oracle: {brute}");
        match (&structured, &skipped) {
            (Some(g), _) => {
                let _ = writeln!(out, "structured: {g}");
            }
            (None, Some(why)) => {
                let _ = writeln!(out, "structured: skipped ({why})");
            }
            (None, None) => {}
        }
        let _ = writeln!(
            out,
            "agree: {}",
            match agree {
                Some(true) => "yes",
                Some(false) => "no",
                None => "n/a",
            }
        );
    }
    if agree == Some(false) {
        return Err(CliError::violation(
            BLOCK_REDUCTION,
            format!(
                "structured and brute-force groups differ for {}",
                Describe(e)
            ),
        ));
    }
    Ok(())
}

fn verify(a: &VerifyArgs, json: bool, out: &mut String) -> Res {
    let all = a.theorem == "all";
    let theorems: Vec<Theorem> = if all {
        Theorem::catalog()
    } else {
        vec![a.theorem.parse::<Theorem>()?]
    };
    let mut work = Vec::new();
    for t in &theorems {
        let from = match a.n_from {
            Some(n) if all => n.max(t.min_n()),
            Some(n) if n < t.min_n() => {
                return Err(usage(format!(
                    "{t} needs n >= {}, got --n-from {n}",
                    t.min_n()
                )))
            }
            Some(n) => n,
            None => t.min_n(),
        };
        let to = a.n_to.unwrap_or(from.max(13));
        work.extend((from..=to).map(|n| (*t, n)));
    }
    if work.is_empty() {
        return Err(usage("empty range: --n-to is below --n-from"));
    }
    let reports: Vec<Result<VerificationReport, Error>> = work
        .par_iter()
        .map(|&(t, n)| verify_closed_form(t, n, a.cap))
        .collect();
    let mut failures = Vec::new();
    for r in reports {
        let r = r?;
        if !r.agrees() {
            failures.push(r.clone());
        }
        if json {
            push_json_line(out, &r.to_json(a.timings));
        } else {
            verify_line(out, &r, a.timings);
        }
    }
    if !json {
        let _ = writeln!(
            out,
            "{} of {} reports agree",
            work.len() - failures.len(),
            work.len()
        );
    }
    match failures.first() {
        None => Ok(()),
        Some(r) => Err(CliError::violation(
            r.subject.theorem.as_deref().unwrap_or("closed form"),
            format!(
                "results disagree at n={} ({} failing report(s))",
                r.subject.n,
                failures.len()
            ),
        )),
    }
}

fn verify_line(out: &mut String, r: &VerificationReport, timings: bool) {
    let side = |g: &Option<AbelianGroup>, skipped: &Option<String>| match (g, skipped) {
        (Some(g), _) => g.to_string(),
        (None, Some(_)) => "skipped".to_string(),
        (None, None) => "-".to_string(),
    };
    let theorem = r.subject.theorem.as_deref().unwrap_or("-");
    let _ = writeln!(
        out,
        "{theorem} n={}: {}",
        r.subject.n,
        if r.agrees() { "agree" } else { "DISAGREE" }
    );
    if let Some(g) = &r.closed_form {
        let _ = writeln!(out, "  closed form: {g}");
    }
    let _ = writeln!(
        out,
        "  structured:  {}",
        side(&r.structured, &r.structured_skipped)
    );
    let _ = writeln!(out, "  oracle:      {}", side(&r.oracle, &r.oracle_skipped));
    if timings {
        let ms = |t: Option<f64>| t.map_or("-".to_string(), |v| format!("{v:.3} ms"));
        let _ = writeln!(
            out,
            "  timings:     closed form {}, structured {}, oracle {}",
            ms(r.timings.closed_form_ms),
            ms(r.timings.structured_ms),
            ms(r.timings.oracle_ms)
        );
    }
}

const CONJECTURE: &str = "super-standard unimodularity conjecture";

fn conjecture(a: &ConjectureArgs, json: bool, out: &mut String) -> Res {
    let mut work = Vec::new();
    for n in a.n_min..=a.n_max {
        for j in 0..=a.k_max.min(n) {
            for i in 0..=j {
                work.push((n, i, j));
            }
        }
    }
    let reports: Vec<ConjectureReport> = work
        .par_iter()
        .map(|&(n, i, j)| check_conjecture(n, i, j))
        .collect();
    if let Some(path) = &a.log {
        let mut log = fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| CliError::Io(format!("cannot open log {}: {e}", path.display())))?;
        let mut text = String::new();
        for r in &reports {
            push_json_line(&mut text, &r.to_json());
        }
        log.write_all(text.as_bytes())
            .map_err(|e| CliError::Io(format!("cannot write log {}: {e}", path.display())))?;
    }
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    for r in &reports {
        if json {
            push_json_line(out, &r.to_json());
        } else {
            let _ = writeln!(
                out,
                "n={} i={} j={}: {}x{} rank {} index {} in range {} holds {}",
                r.n,
                r.i,
                r.j,
                r.rows,
                r.cols,
                r.rank,
                r.index,
                yes_no(r.in_hypothesis),
                yes_no(r.holds)
            );
        }
    }
    let inside: Vec<&ConjectureReport> = reports.iter().filter(|r| r.in_hypothesis).collect();
    let broken: Vec<&&ConjectureReport> = inside.iter().filter(|r| !r.holds).collect();
    if !json {
        let outside = reports.len() - inside.len();
        let outside_holds = reports
            .iter()
            .filter(|r| !r.in_hypothesis && r.holds)
            .count();
        let _ = writeln!(
            out,
            "in range: {} of {} hold; outside range: {} of {} hold",
            inside.len() - broken.len(),
            inside.len(),
            outside_holds,
            outside
        );
    }
    match broken.first() {
        None => Ok(()),
        Some(r) => Err(CliError::violation(
            CONJECTURE,
            format!("counterexample at n={} i={} j={}", r.n, r.i, r.j),
        )),
    }
}

fn export(a: &ExportArgs, json: bool, out: &mut String) -> Res {
    let el = &a.element;
    let need = |v: Option<u32>, flag: &str| {
        v.ok_or_else(|| usage(format!("--which {:?} needs {flag}", a.which)))
    };
    let check_size = |rows: u64, cols: u64| {
        let size = rows.max(cols);
        if size > a.cap {
            Err(CliError::Lib(Error::SizeCapExceeded { size, cap: a.cap }))
        } else {
            Ok(())
        }
    };
    let m = match a.which {
        Which::A => {
            let e = el.to_element()?;
            check_size(e.rows(), e.cols())?;
            scheme_matrix(&e)
        }
        Which::P => {
            let (n, k) = (need(el.n, "--n")?, need(el.k, "--k")?);
            if k > n {
                return Err(usage(format!("need k <= n, got n={n} k={k}")));
            }
            let rows = johnson_snf::binomial(i64::from(n), i64::from(k));
            check_size(u64::try_from(&rows).unwrap_or(u64::MAX), 0)?;
            bier_p(n, k)
        }
        Which::W | Which::Ptilde => {
            let (n, i, j) = (need(el.n, "--n")?, need(a.i, "--i")?, need(a.j, "--j")?);
            if i > n || j > n {
                return Err(usage(format!("need i, j <= n, got n={n} i={i} j={j}")));
            }
            let binom = |k: u32| {
                u64::try_from(&johnson_snf::binomial(i64::from(n), i64::from(k)))
                    .unwrap_or(u64::MAX)
            };
            check_size(binom(i), binom(j))?;
            if a.which == Which::W {
                w_matrix(n, i, j)
            } else {
                p_tilde(n, i, j)
            }
        }
        Which::E => {
            let (n, s) = (need(el.n, "--n")?, need(a.s, "--s")?);
            check_size(johnson_snf::mu(n, s), 0)?;
            e_matrices(n, s)?[s as usize].clone()
        }
    };
    let text = to_text(&m);
    match &a.out {
        None => out.push_str(&text),
        Some(path) => {
            fs::write(path, &text)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
            if json {
                push_json(
                    out,
                    &json!({ "rows": m.rows(), "cols": m.cols(), "path": path.display().to_string() }),
                );
            } else {
                let _ = writeln!(
                    out,
                    "wrote {}x{} matrix to {}",
                    m.rows(),
                    m.cols(),
                    path.display()
                );
            }
        }
    }
    Ok(())
}

fn snf(a: &SnfArgs, json: bool, out: &mut String) -> Res {
    let text = fs::read_to_string(&a.input)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", a.input.display())))?;
    let m = from_text(&text)?;
    let form = smith_normal_form(&m, a.transforms);
    let group = form.group();
    let transforms = || -> Option<(&IntMatrix, &IntMatrix)> {
        Some((form.left_transform()?, form.right_transform()?))
    };
    if json {
        let mut v = json!({
            "rows": m.rows(),
            "cols": m.cols(),
            "rank": form.rank(),
            "invariant_factors": ints(form.invariant_factors()),
            "index": json_int(&form.index()),
            "group": group_json(&group),
        });
        if let Some((l, r)) = transforms() {
            v["left_transform"] = matrix_json(l);
            v["right_transform"] = matrix_json(r);
        }
        push_json(out, &v);
        return Ok(());
    }
    let _ = writeln!(out, "size: {}x{}", m.rows(), m.cols());
    let _ = writeln!(out, "rank: {}", form.rank());
    let _ = writeln!(
        out,
        "invariant factors: {}",
        joined(form.invariant_factors(), " ")
    );
    let _ = writeln!(out, "group: {group}");
    if let Some((l, r)) = transforms() {
        let _ = writeln!(out, "left transform:");
        out.push_str(&to_text(l));
        let _ = writeln!(out, "right transform:");
        out.push_str(&to_text(r));
    }
    Ok(())
}

fn run_bench(a: &BenchArgs, json: bool, out: &mut String) -> Res {
    let e = a.element.to_element()?;
    if a.repeats == 0 {
        return Err(usage("--repeats must be at least 1"));
    }
    let r: BenchReport = bench(&e, a.repeats, a.cap)?;
    if json {
        push_json(out, &r.to_json());
    } else {
        let arm = |t: &Option<Timing>, skipped: &Option<String>| match (t, skipped) {
            (Some(t), _) => format!(
                "median {:.3} ms, min {:.3} ms over {} run(s)",
                t.median_ms(),
                t.min_ms(),
                t.runs.len()
            ),
            (None, Some(why)) => format!("skipped ({why})"),
            (None, None) => "-".to_string(),
        };
        let _ = writeln!(out, "element: {}", Describe(&e));
        let _ = writeln!(
            out,
            "structured:  {}",
            arm(&r.structured, &r.structured_skipped)
        );
        let _ = writeln!(out, "brute force: {}", arm(&r.oracle, &r.oracle_skipped));
        if let Some(x) = r.speedup() {
            let _ = writeln!(out, "speedup: {x:.1}x");
        }
    }
    if r.agree == Some(false) {
        return Err(CliError::violation(
            BLOCK_REDUCTION,
            format!(
                "structured and brute-force groups differ for {}",
                Describe(&e)
            ),
        ));
    }
    Ok(())
}
