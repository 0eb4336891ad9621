mod args;

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;

use hypertope::cgroup::GeneratedGroup;
use hypertope::families::{
    admissible_tuples, analyze_presentation, sweep, verify_lemma31, verify_prop23,
    verify_theorem32, FamilyError, PipelineConfig, TheoremReport,
};
use hypertope::geometry::build_geometry;
use hypertope::presentation::theorem_presentation;
use hypertope::report::{RunRecord, Stage};
use hypertope::{Family, Presentation, TheoremParams};

use args::{Cli, Command, Format, RunOptions};

#[derive(Debug)]
enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<FamilyError> for Failure {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::Param(_)
            | FamilyError::TooLarge { .. }
            | FamilyError::GeneratorCount(_) => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

struct Output {
    format: Format,
    timings: bool,
}

impl Output {
    fn emit(&self, mut record: RunRecord, text: impl FnOnce(&RunRecord, bool) -> String) {
        if !self.timings {
            record.strip_timings();
        }
        match self.format {
            Format::Json => println!("{}", record.to_json()),
            Format::Text => print!("{}", text(&record, self.timings)),
        }
    }
}

fn verdict(pass: bool) -> String {
    if pass { "PASS" } else { "FAIL" }.to_string()
}

fn stage_lines(stages: &[Stage], timings: bool) -> String {
    let mut out = String::new();
    for s in stages {
        out.push_str(&format!("  {:<22} {}", s.name, verdict(s.pass)));
        if let (true, Some(ms)) = (timings, s.elapsed_ms) {
            out.push_str(&format!("  {ms:>10.3} ms"));
        }
        if let Some(w) = &s.witness {
            out.push_str(&format!("  {w}"));
        }
        out.push('\n');
    }
    out
}

fn params(pairs: &[(&str, i64)]) -> BTreeMap<String, i64> {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

fn config(run: &RunOptions, deep: bool) -> PipelineConfig {
    PipelineConfig {
        capacity: run.capacity,
        ceiling: run.ceiling,
        deep,
    }
}

fn dump_incidence(p: &Presentation, cfg: &PipelineConfig, path: &Path) -> Result<(), Failure> {
    let g = GeneratedGroup::from_presentation(p, cfg.capacity, cfg.ceiling)
        .map_err(|e| Failure::Runtime(e.to_string()))?;
    let geom = build_geometry(&g).map_err(|e| Failure::Runtime(e.to_string()))?;
    fs::write(path, geom.edge_list())
        .map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))
}

fn prop23(run: &RunOptions, out: &Output, bs: impl Iterator<Item = u32>) -> Result<bool, Failure> {
    let cfg = config(run, false);
    let mut all = true;
    for b in bs {
        let r = verify_prop23(b as i64, &cfg)?;
        all &= r.pass;
        let record = RunRecord::new(
            "prop23",
            params(&[("b", r.b)]),
            r.stages.clone(),
            verdict(r.pass),
        )
        .detail("b", r.b)
        .detail("m1_order", r.m1_order)
        .detail("m2_order", r.m2_order)
        .detail("m1_rho210_order", r.m1_rho210_order)
        .detail("m2_rho1210_order", r.m2_rho1210_order);
        out.emit(record, |rec, timings| {
            let mut s = format!(
                "b={:<3} |M1|={:<6} |M2|={:<6} o(r2*r1*r0)={:<4} o(r1*r2*r1*r0)={:<4} {}\n",
                r.b, r.m1_order, r.m2_order, r.m1_rho210_order, r.m2_rho1210_order, rec.verdict
            );
            if !r.pass {
                s.push_str(&stage_lines(&rec.stages, timings));
            }
            s
        });
    }
    Ok(all)
}

fn lemma31(run: &RunOptions, out: &Output, bs: impl Iterator<Item = u32>) -> Result<bool, Failure> {
    let cfg = config(run, false);
    let mut all = true;
    for b in bs {
        let r = verify_lemma31(b as i64, &cfg)?;
        all &= r.pass;
        let prefixed = |group: &str, stages: &[Stage]| -> Vec<Stage> {
            stages
                .iter()
                .map(|s| Stage {
                    name: format!("{group}.{}", s.name),
                    ..s.clone()
                })
                .collect()
        };
        let mut stages = prefixed("m1", &r.m1);
        stages.extend(prefixed("m2", &r.m2));
        let record = RunRecord::new("lemma31", params(&[("b", r.b)]), stages, verdict(r.pass));
        out.emit(record, |rec, timings| {
            format!(
                "lemma31 b={}: {}\n{}",
                r.b,
                rec.verdict,
                stage_lines(&rec.stages, timings)
            )
        });
    }
    Ok(all)
}

fn theorem_record(command: &str, r: &TheoremReport) -> RunRecord {
    let p = &r.params;
    let mut rec = RunRecord::new(
        command,
        params(&[
            ("n", p.n as i64),
            ("s", p.s as i64),
            ("t", p.t as i64),
            ("l", p.l as i64),
        ]),
        r.stages.clone(),
        r.verdict.clone(),
    )
    .detail("pass", r.pass)
    .detail("parity", r.parity)
    .detail("group_order", r.group_order);
    for (key, value) in [
        ("type", r.type_orders.map(|t| serde_json::json!(t))),
        ("k_order", r.k_order.map(|v| serde_json::json!(v))),
        (
            "quotient_order",
            r.quotient_order.map(|v| serde_json::json!(v)),
        ),
        ("rank", r.rank.map(|v| serde_json::json!(v))),
        (
            "tits_set",
            r.tits_set.as_ref().map(|v| serde_json::json!(v)),
        ),
        ("chambers", r.chambers.map(|v| serde_json::json!(v))),
    ] {
        if let Some(v) = value {
            rec = rec.detail(key, v);
        }
    }
    rec
}

fn theorem_text(r: &TheoremReport) -> impl FnOnce(&RunRecord, bool) -> String + '_ {
    move |rec, timings| {
        let parity = serde_json::to_value(r.parity).unwrap_or_default();
        format!(
            "theorem {} [{}]\n{}{}\n",
            r.params,
            parity.as_str().unwrap_or_default(),
            stage_lines(&rec.stages, timings),
            r.verdict
        )
    }
}

fn theorem(
    run: &RunOptions,
    out: &Output,
    p: TheoremParams,
    deep: bool,
    dump: Option<&Path>,
) -> Result<bool, Failure> {
    let cfg = config(run, deep);
    let r = verify_theorem32(&p, &cfg)?;
    if let Some(path) = dump {
        let pres = theorem_presentation(Family::G, &p).map_err(FamilyError::from)?;
        dump_incidence(&pres, &cfg, path)?;
    }
    out.emit(theorem_record("theorem", &r), theorem_text(&r));
    Ok(r.pass)
}

fn run_sweep(
    run: &RunOptions,
    out: &Output,
    ranges: [&std::ops::RangeInclusive<u32>; 4],
    deep: bool,
) -> Result<bool, Failure> {
    let bounds = |r: &std::ops::RangeInclusive<u32>| (*r.start(), *r.end());
    let (tuples, skipped) = admissible_tuples(
        bounds(ranges[0]),
        bounds(ranges[1]),
        bounds(ranges[2]),
        bounds(ranges[3]),
    );
    let cfg = config(run, deep);
    let results = sweep(&tuples, &cfg);
    let mut passed = 0;
    let mut errors = 0;
    for (p, result) in tuples.iter().zip(results) {
        match result {
            Ok(r) => {
                passed += r.pass as usize;
                out.emit(theorem_record("sweep", &r), theorem_text(&r));
            }
            Err(e) => {
                errors += 1;
                let record = RunRecord::new(
                    "sweep",
                    params(&[
                        ("n", p.n as i64),
                        ("s", p.s as i64),
                        ("t", p.t as i64),
                        ("l", p.l as i64),
                    ]),
                    vec![],
                    format!("ERROR: {e}"),
                );
                out.emit(record, |rec, _| format!("theorem {p}\n{}\n", rec.verdict));
            }
        }
    }
    let all = passed == tuples.len();
    let record = RunRecord::new("sweep", BTreeMap::new(), vec![], verdict(all)).detail(
        "summary",
        serde_json::json!({
            "executed": tuples.len(),
            "passed": passed,
            "errors": errors,
            "skipped": skipped,
        }),
    );
    out.emit(record, |rec, _| {
        format!(
            "sweep: {} executed, {passed} passed, {errors} errors, {skipped} inadmissible skipped: {}\n",
            tuples.len(),
            rec.verdict
        )
    });
    Ok(all)
}

fn analyze(
    run: &RunOptions,
    out: &Output,
    file: &Path,
    dump: Option<&Path>,
) -> Result<bool, Failure> {
    let text = fs::read_to_string(file)
        .map_err(|e| Failure::Runtime(format!("{}: {e}", file.display())))?;
    let pres = Presentation::from_text(&text)
        .map_err(|e| Failure::Runtime(format!("{}: {e}", file.display())))?;
    let cfg = config(run, false);
    let r = analyze_presentation(&pres, &cfg).map_err(|e| match e {
        FamilyError::GeneratorCount(_) => Failure::Runtime(e.to_string()),
        other => Failure::from(other),
    })?;
    if let Some(path) = dump {
        dump_incidence(&pres, &cfg, path)?;
    }
    let record = RunRecord::new(
        "analyze",
        pres.params.clone(),
        r.stages.clone(),
        r.verdict.clone(),
    )
    .detail("order", r.order)
    .detail("presentation", pres.to_string())
    .detail("type", r.type_orders)
    .detail("c_group", &r.c_group)
    .detail("string_orderings", &r.string_orderings)
    .detail("tits_lhs", &r.tits_lhs)
    .detail("tits_rhs", &r.tits_rhs);
    out.emit(record, |rec, timings| {
        let mut s = format!("presentation {pres}\norder {}\n", r.order);
        if let Some(t) = r.type_orders {
            s.push_str(&format!("type ({},{},{})\n", t[0], t[1], t[2]));
        }
        if let Some(rhs) = &r.tits_rhs {
            s.push_str(&format!("G1G2 ∩ G0 = {{{}}}\n", rhs.join(", ")));
        }
        if !r.string_orderings.is_empty() {
            let orders: Vec<String> = r
                .string_orderings
                .iter()
                .map(|o| format!("{o:?}"))
                .collect();
            s.push_str(&format!("string orderings {}\n", orders.join(" ")));
        }
        s.push_str(&stage_lines(&rec.stages, timings));
        s.push_str(&rec.verdict);
        s.push('\n');
        s
    });
    // the run itself succeeded whatever the verdict
    Ok(true)
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let out = Output {
        format: cli.run.format,
        timings: !cli.run.no_timings,
    };
    let run = &cli.run;
    match &cli.command {
        Command::Prop23 { b_range } => prop23(run, &out, b_range.clone()),
        Command::Lemma31 { b_range } => lemma31(run, &out, b_range.clone()),
        Command::Theorem {
            n,
            s,
            t,
            l,
            deep,
            dump_incidence,
        } => {
            let p = TheoremParams::new(*n, *s, *t, *l);
            p.validate().map_err(|e| Failure::Usage(e.to_string()))?;
            theorem(run, &out, p, *deep, dump_incidence.as_deref())
        }
        Command::Sweep {
            n_range,
            s_range,
            t_range,
            l_range,
            deep,
        } => run_sweep(run, &out, [n_range, s_range, t_range, l_range], *deep),
        Command::Analyze {
            file,
            dump_incidence,
        } => analyze(run, &out, file, dump_incidence.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
