use std::fmt::Display;

use discreteness_engine::{jorgensen_test, run, EngineConfig, Verdict};
use farey_combinatorics::{
    cf_expand, cf_value, farey_add, farey_word, fseq_to_pair, gk_digits, lr_sequence, mediant, verify_gilman_keen,
    ContinuedFraction, FSequence, Fraction,
};
use killer_grid::{grid_search, parse_range, reverify, EvalMode, ParamBox, SearchConfig};
use serde_json::{json, Value};
use trace_algebra::{
    beta, fricke_polynomial, format_rational, gamma, good_gamma_polynomial_checked, parse_matrix, Mat2, Rational,
    RealScalar,
};
use word_core::{cyclic_reduce, good_product, is_good, parse_word, primitive_exponents, Gen, Word};

use crate::cli::{Cli, Command, FareyOp, ScalarMode};
use crate::conventions::{self, Conventions};
use crate::table::{grid, kv};
use crate::{domain_err, input_err, verify, CliError, Output};

fn word_arg(text: &str) -> Result<Word, CliError> {
    parse_word(text).map_err(|e| CliError::Input(format!("bad word {text:?}: {e}")))
}

fn good_arg(text: &str) -> Result<Word, CliError> {
    let w = word_arg(text)?;
    if !is_good(&w) {
        return Err(CliError::Domain(format!("{w} is not a good word")));
    }
    Ok(w)
}

fn fraction_arg(text: &str) -> Result<Fraction, CliError> {
    text.parse().map_err(input_err)
}

fn matrix_arg(text: &str) -> Result<Mat2<Rational>, CliError> {
    parse_matrix(text).map_err(|e| CliError::Input(format!("bad matrix {text:?}: {e}")))
}

fn mat_text(m: &Mat2<Rational>) -> String {
    let e = m.entries().map(format_rational);
    format!("{},{};{},{}", e[0], e[1], e[2], e[3])
}

fn ok(json: Value, text: String) -> Output {
    Output { json, text, ok: true }
}

pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    let path = conventions::lockfile_path(cli.conventions.as_deref());
    if let Command::Calibrate { check } = &cli.command {
        return calibrate(&path, *check);
    }
    let conv = conventions::load_and_check(&path)?;
    match &cli.command {
        Command::Word { word } => word_cmd(word),
        Command::Farey { op } => farey_cmd(op),
        Command::Fseq { seq, trailing } => fseq_cmd(seq, trailing.unwrap_or(conv.trailing_fibonacci), &conv),
        Command::TracePoly { word } => {
            let w = word_arg(word)?;
            let p = fricke_polynomial(&w);
            Ok(ok(json!({"word": w, "polynomial": p, "text": p.to_string()}), format!("{p}\n")))
        }
        Command::GoodPoly { word, margin } => {
            let w = good_arg(word)?;
            let p = good_gamma_polynomial_checked(&w, conv.gm_reading, *margin).map_err(domain_err)?;
            let text = kv(&[("word", w.to_string()), ("reading", conv.gm_reading.name().into()), ("P", p.to_string())]);
            Ok(ok(json!({"word": w, "reading": conv.gm_reading, "polynomial": p, "text": p.to_string()}), text))
        }
        Command::GoodProduct { w1, w2 } => {
            let (a, b) = (good_arg(w1)?, good_arg(w2)?);
            let p = good_product(&a, &b);
            let good = is_good(&p);
            Ok(ok(json!({"w1": a, "w2": b, "product": p, "good": good}), format!("{p}\n")))
        }
        Command::Discrete { f, g, scalar, max_steps, q_max } => {
            let (f, g) = (matrix_arg(f)?, matrix_arg(g)?);
            let cfg = EngineConfig { max_steps: *max_steps, q_max: *q_max };
            match scalar {
                ScalarMode::Rational => discrete_cmd(&f, &g, &cfg),
                ScalarMode::Float => {
                    let to = |m: &Mat2<Rational>| m.map(|x| RealScalar::to_f64(x));
                    discrete_cmd(&to(&f), &to(&g), &cfg)
                }
                ScalarMode::Interval => Err(CliError::Domain("interval scalars apply to killer-grid only".into())),
            }
        }
        Command::Jorgensen { f, g } => jorgensen_cmd(&matrix_arg(f)?, &matrix_arg(g)?),
        Command::KillerGrid { gamma, beta, depth, max_syllables, max_b_exponent, scalar, out } => {
            let mode = match scalar {
                ScalarMode::Interval => EvalMode::Float,
                ScalarMode::Rational => EvalMode::Exact,
                ScalarMode::Float => {
                    return Err(CliError::Domain("plain floats are not sound here; use interval or rational".into()))
                }
            };
            if *max_syllables < 1 {
                return Err(CliError::Input("max-syllables must be at least 1".into()));
            }
            let region = ParamBox::new(parse_range(gamma).map_err(input_err)?, parse_range(beta).map_err(input_err)?);
            let cfg = SearchConfig { max_syllables: *max_syllables, max_b_exponent: *max_b_exponent, mode };
            killer_cmd(&region, *depth, &cfg, out.as_deref())
        }
        Command::VerifyPaper { max_size } => Ok(verify::run(*max_size, &conv)),
        Command::Calibrate { .. } => unreachable!(),
    }
}

fn word_cmd(text: &str) -> Result<Output, CliError> {
    let w = word_arg(text)?;
    let prim = primitive_exponents(&w).ok();
    let cyc = cyclic_reduce(&w);
    let json = json!({
        "word": w,
        "syllables": w.len(),
        "letters": w.letter_len(),
        "a_exponent_sum": w.exponent_sum(Gen::A),
        "b_exponent_sum": w.exponent_sum(Gen::B),
        "good": is_good(&w),
        "inverse": w.inverse(),
        "cyclic_reduction": cyc,
        "primitive_exponents": prim,
    });
    let text = kv(&[
        ("word", w.to_string()),
        ("syllables", w.len().to_string()),
        ("letters", w.letter_len().to_string()),
        ("exponent sums", format!("a {} b {}", w.exponent_sum(Gen::A), w.exponent_sum(Gen::B))),
        ("good", is_good(&w).to_string()),
        ("inverse", w.inverse().to_string()),
        ("cyclic reduction", cyc.to_string()),
        (
            "primitive form",
            prim.map(|p| format!("{}:{:?}", p.leading_b_exponent, p.body)).unwrap_or_else(|| "no".into()),
        ),
    ]);
    Ok(ok(json, text))
}

fn farey_cmd(op: &FareyOp) -> Result<Output, CliError> {
    match op {
        FareyOp::Word { fraction } => {
            let f = fraction_arg(fraction)?;
            let w = farey_word(f);
            Ok(ok(json!({"fraction": f, "word": w}), format!("{w}\n")))
        }
        FareyOp::Add { f, g } => {
            let (f, g) = (fraction_arg(f)?, fraction_arg(g)?);
            let w = farey_add(f, g).map_err(domain_err)?;
            let m = mediant(f, g).map_err(domain_err)?;
            let text = kv(&[("mediant", m.to_string()), ("word", w.to_string())]);
            Ok(ok(json!({"f": f, "g": g, "mediant": m, "word": w}), text))
        }
        FareyOp::Cf { fraction } => {
            let f = fraction_arg(fraction)?;
            let cf = cf_expand(f).map_err(domain_err)?;
            Ok(ok(json!({"fraction": f, "cf": cf}), format!("{cf}\n")))
        }
        FareyOp::Lr { fraction } => {
            let f = fraction_arg(fraction)?;
            let lr = lr_sequence(f).map_err(domain_err)?;
            let text = kv(&[("path", lr.to_string()), ("runs", format!("{:?}", lr.counts()))]);
            Ok(ok(json!({"fraction": f, "lr": lr.to_string(), "runs": lr.counts()}), text))
        }
    }
}

fn fseq_cmd(text: &str, trailing: bool, conv: &Conventions) -> Result<Output, CliError> {
    let s: FSequence = text.parse().map_err(input_err)?;
    if s.is_empty() {
        return Err(CliError::Input("empty F-sequence".into()));
    }
    let (c, d) = fseq_to_pair(&s, trailing);
    let digits = gk_digits(&s, trailing, conv.fseq_digit_offset);
    let frac = cf_value(&ContinuedFraction { digits: digits.clone() }).map_err(domain_err)?;
    let gk = verify_gilman_keen(&s, &conventions::Conventions { trailing_fibonacci: trailing, ..conv.clone() }.gk())
        .map_err(domain_err)?;
    let json = json!({
        "fseq": s,
        "trailing_fibonacci": trailing,
        "pair": [c, d],
        "digits": digits,
        "fraction": frac,
        "farey_word": farey_word(frac),
        "gilman_keen": gk,
    });
    let text = kv(&[
        ("F-sequence", s.to_string()),
        ("trailing Fibonacci", trailing.to_string()),
        ("C", c.to_string()),
        ("D", d.to_string()),
        ("digits", format!("{digits:?}")),
        ("fraction", frac.to_string()),
        ("Farey word", farey_word(frac).to_string()),
        ("Gilman-Keen", if gk.holds { "holds" } else { "fails" }.into()),
    ]);
    Ok(Output { json, text, ok: gk.holds })
}

fn discrete_cmd<S: RealScalar + Display>(f: &Mat2<S>, g: &Mat2<S>, cfg: &EngineConfig) -> Result<Output, CliError> {
    let (v, t) = run(f, g, cfg).map_err(domain_err)?;
    let (certificate, geodesics, reason) = match &v {
        Verdict::Discrete { shortest_geodesics } => (Value::Null, json!(shortest_geodesics), Value::Null),
        Verdict::NotDiscrete { certificate } => (json!(certificate), Value::Null, Value::Null),
        Verdict::Inconclusive { reason, .. } => (Value::Null, Value::Null, json!(reason)),
    };
    let json = json!({
        "verdict": v.name(),
        "certificate": certificate,
        "reason": reason,
        "f_sequence": t.f_sequence,
        "trailing_fibonacci": t.trailing_fibonacci,
        "geodesics": geodesics,
        "final_pair": [t.final_pair_words.0, t.final_pair_words.1],
        "normalization": t.normalization,
        "steps": t.steps,
    });
    let mut text = kv(&[
        ("verdict", v.name().into()),
        ("detail", match &v {
            Verdict::Discrete { shortest_geodesics: l } => format!("geodesics {:.6} {:.6} {:.6}", l[0], l[1], l[2]),
            Verdict::NotDiscrete { certificate } => serde_json::to_string(certificate).unwrap_or_default(),
            Verdict::Inconclusive { reason, steps_used } => format!("{reason} after {steps_used} steps"),
        }),
        ("F-sequence", t.f_sequence.to_string()),
        ("final pair", format!("{} | {}", t.final_pair_words.0, t.final_pair_words.1)),
        ("steps", t.steps.len().to_string()),
    ]);
    if !t.steps.is_empty() {
        let rows: Vec<Vec<String>> = t
            .steps
            .iter()
            .enumerate()
            .take(20)
            .map(|(i, s)| {
                vec![
                    (i + 1).to_string(),
                    format!("{:?}", s.kind).to_lowercase(),
                    format!("{:.6}", s.traces_after[0]),
                    format!("{:.6}", s.traces_after[1]),
                ]
            })
            .collect();
        text.push('\n');
        text.push_str(&grid(&["step", "kind", "|tr F|", "|tr G|"], &rows));
    }
    Ok(ok(json, text))
}

fn jorgensen_cmd(f: &Mat2<Rational>, g: &Mat2<Rational>) -> Result<Output, CliError> {
    let (sum, violated) = jorgensen_test(f, g);
    let (b, gm) = (beta(f), gamma(f, g));
    let json = json!({
        "f": mat_text(f),
        "g": mat_text(g),
        "beta_f": format_rational(&b),
        "gamma": format_rational(&gm),
        "sum": format_rational(&sum),
        "violated": violated,
    });
    let text = kv(&[
        ("beta(f)", format_rational(&b)),
        ("gamma(f, g)", format_rational(&gm)),
        ("sum", format_rational(&sum)),
        ("violated", violated.to_string()),
    ]);
    Ok(ok(json, text))
}

fn killer_cmd(region: &ParamBox, depth: usize, cfg: &SearchConfig, out: Option<&std::path::Path>) -> Result<Output, CliError> {
    let report = grid_search(region, depth, cfg);
    let verified = reverify(&report);
    let full = serde_json::to_value(&report).map_err(|e| CliError::Io(e.to_string()))?;
    if let Some(p) = out {
        let text = serde_json::to_string_pretty(&full).map_err(|e| CliError::Io(e.to_string()))?;
        std::fs::write(p, text + "\n").map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
    }
    let (ok_flag, verified_json) = match &verified {
        Ok(n) => (true, json!(n)),
        Err(e) => (false, json!(e.to_string())),
    };
    let json = if out.is_some() {
        json!({"region": full["region"], "stats": full["stats"], "depth_reached": report.depth_reached, "reverified": verified_json})
    } else {
        let mut v = full;
        v["reverified"] = verified_json.clone();
        v
    };
    let mut words: std::collections::BTreeMap<String, usize> = Default::default();
    for c in report.killed() {
        if let killer_grid::CellStatus::Killed(k) = &c.status {
            *words.entry(k.word.to_string()).or_default() += 1;
        }
    }
    let mut text = kv(&[
        ("region", region.to_string()),
        ("depth reached", report.depth_reached.to_string()),
        ("cells examined", report.stats.cells_examined.to_string()),
        ("words tried", report.stats.words_tried.to_string()),
        ("killed", report.stats.killed.to_string()),
        ("surviving", report.stats.surviving.to_string()),
        ("re-verified", match &verified {
            Ok(n) => format!("{n} certificates"),
            Err(e) => format!("FAILED: {e}"),
        }),
    ]);
    if !words.is_empty() {
        text.push('\n');
        let rows: Vec<Vec<String>> = words.iter().map(|(w, n)| vec![w.clone(), n.to_string()]).collect();
        text.push_str(&grid(&["killer word", "cells"], &rows));
    }
    Ok(Output { json, text, ok: ok_flag })
}

fn calibrate(path: &std::path::Path, check: bool) -> Result<Output, CliError> {
    let cal = conventions::calibrate();
    let found = conventions::lockfile_from(&cal);
    let frozen = Conventions::frozen();
    let matches_built_in = found.as_ref() == Some(&frozen);
    let mut text = grid(
        &["Gilman-Keen convention", "passed", "failed"],
        &cal.gk_rows.iter().map(|(n, p, f)| vec![n.clone(), p.to_string(), f.to_string()]).collect::<Vec<_>>(),
    );
    text.push('\n');
    text.push_str(&grid(
        &["w1", "w2", "readings satisfying composition"],
        &cal
            .gm_rows
            .iter()
            .map(|r| {
                vec![r.w1.to_string(), r.w2.to_string(), r.holding.iter().map(|x| x.name()).collect::<Vec<_>>().join(" ")]
            })
            .collect::<Vec<_>>(),
    ));
    text.push('\n');
    let mut ok_flag = matches_built_in;
    let action = if !matches_built_in {
        "calibration disagrees with the built-in conventions; lockfile not written".to_string()
    } else if check {
        match conventions::load_and_check(path) {
            Ok(_) => format!("{} is up to date", path.display()),
            Err(e) => {
                ok_flag = false;
                e.to_string()
            }
        }
    } else {
        let body = serde_json::to_string_pretty(&frozen).map_err(|e| CliError::Io(e.to_string()))?;
        std::fs::write(path, body + "\n").map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        format!("wrote {}", path.display())
    };
    text.push_str(&action);
    text.push('\n');
    let json = json!({"calibration": cal, "lockfile": found, "built_in": frozen, "ok": ok_flag, "action": action});
    Ok(Output { json, text, ok: ok_flag })
}
