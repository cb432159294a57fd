//! Golden-file cases for the command line.
//!
//! Each case runs the binary inside `tests/golden/inputs` and compares its
//! exit code, stdout and stderr with `tests/golden/<name>.stdout` and
//! `.stderr`. Setting `LINKHOM_UPDATE_GOLDEN=1` rewrites the expected files.

use std::path::PathBuf;
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

pub const CASES: &[Case] = &[
    Case { name: "invariants_borromean", args: &["invariants", "borromean.lk"], exit: 0 },
    Case { name: "invariants_json_borromean", args: &["invariants", "--json", "borromean.lk"], exit: 0 },
    Case { name: "invariants_tsv_hopf", args: &["invariants", "--tsv", "hopf.lk"], exit: 0 },
    Case { name: "canon_borromean", args: &["canon", "borromean.lk"], exit: 0 },
    Case { name: "canon_clasp_triple", args: &["canon", "clasp_triple.lk"], exit: 0 },
    Case { name: "eq_borromean_unlink", args: &["eq", "borromean.lk", "unlink3.lk"], exit: 1 },
    Case { name: "eq_borromean_self", args: &["eq", "borromean.lk", "borromean.lk"], exit: 0 },
    Case {
        name: "closure_eq_borromean_unlink",
        args: &["closure-eq", "borromean.lk", "unlink3.lk", "--budget", "10000", "--certificate"],
        exit: 1,
    },
    Case { name: "closure_eq_borromean_self", args: &["closure-eq", "borromean.lk", "borromean.lk"], exit: 0 },
    Case {
        name: "closure_eq_budget_exhausted",
        args: &["closure-eq", "clasp_triple.lk", "clasp.lk", "--budget", "0", "--certificate"],
        exit: 2,
    },
    Case {
        name: "closure_eq_witness",
        args: &["closure-eq", "clasp_triple.lk", "clasp.lk", "--budget", "10000", "--certificate"],
        exit: 0,
    },
    Case { name: "count_five", args: &["count", "--colors", "1 1 1 1 1"], exit: 0 },
    Case { name: "count_level", args: &["count", "--colors", "2 1 1", "--level", "2"], exit: 0 },
    Case { name: "graph_eq_distinct", args: &["graph-eq", "theta_a.lk", "theta_b.lk", "--certificate"], exit: 1 },
    Case { name: "graph_eq_reordered", args: &["graph-eq", "theta_a.lk", "theta_d.lk", "--certificate"], exit: 0 },
    Case { name: "reduce_graph", args: &["reduce-graph", "theta_a.lk"], exit: 0 },
    Case { name: "parse_error_generator", args: &["invariants", "bad_generator.lk"], exit: 4 },
    Case { name: "parse_error_json", args: &["--error-json", "canon", "bad_generator.lk"], exit: 4 },
    Case { name: "parse_error_range", args: &["invariants", "bad_range.lk"], exit: 4 },
    Case { name: "parse_error_clasper", args: &["invariants", "bad_clasper.lk"], exit: 4 },
    Case { name: "missing_file", args: &["invariants", "missing.lk"], exit: 3 },
    Case { name: "ambient_mismatch", args: &["eq", "hopf.lk", "borromean.lk"], exit: 5 },
    Case { name: "unknown_subcommand", args: &["frobnicate"], exit: 6 },
];

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Runs one case; `Err` describes the first mismatch.
pub fn check(case: &Case) -> Result<(), String> {
    let dir = golden_dir();
    let out = Command::new(env!("CARGO_BIN_EXE_linkhom"))
        .args(case.args)
        .current_dir(dir.join("inputs"))
        .env_remove("LINKHOM_CACHE_DIR")
        .output()
        .map_err(|e| format!("{}: cannot run binary: {e}", case.name))?;
    let code = out.status.code().unwrap_or(-1);
    let stdout = String::from_utf8_lossy(&out.stdout).into_owned();
    let stderr = String::from_utf8_lossy(&out.stderr).into_owned();
    let (so, se) = (dir.join(format!("{}.stdout", case.name)), dir.join(format!("{}.stderr", case.name)));
    if std::env::var_os("LINKHOM_UPDATE_GOLDEN").is_some() {
        std::fs::write(&so, &stdout).unwrap();
        std::fs::write(&se, &stderr).unwrap();
    }
    if code != case.exit {
        return Err(format!("{}: exit {code}, expected {}\n{stderr}", case.name, case.exit));
    }
    let want_out = std::fs::read_to_string(&so).map_err(|e| format!("{}: {e}", so.display()))?;
    let want_err = std::fs::read_to_string(&se).map_err(|e| format!("{}: {e}", se.display()))?;
    if stdout != want_out {
        return Err(format!("{}: stdout differs\n--- got\n{stdout}--- want\n{want_out}", case.name));
    }
    if stderr != want_err {
        return Err(format!("{}: stderr differs\n--- got\n{stderr}--- want\n{want_err}", case.name));
    }
    Ok(())
}
