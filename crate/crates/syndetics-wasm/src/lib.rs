//! Browser bindings for the demo page: evaluate a generator spec, classify
//! the result, and run the shift-punch engine, all over JSON strings.

use wasm_bindgen::prelude::*;

use syndetics::classify::{syndetic_on_window, thick_on_window};
use syndetics::generate::{generate, GeneratorSpec};
use syndetics::punch::{l_set, run, DyadicInterval};
use syndetics::symbolic::positive_part_profile;
use syndetics::window::WindowSet;

fn err_json(msg: impl std::fmt::Display) -> String {
    serde_json::json!({ "error": msg.to_string() }).to_string()
}

fn parse_spec(spec_json: &str) -> Result<WindowSet, String> {
    let spec: GeneratorSpec =
        serde_json::from_str(spec_json).map_err(|e| format!("bad spec: {e}"))?;
    generate(&spec).map_err(|e| e.to_string())
}

fn profile_json(set: &WindowSet) -> serde_json::Value {
    let p = set.gap_profile();
    serde_json::json!({
        "covering_gap": p.covering_gap,
        "longest_run": p.longest_run,
        "head": p.head,
        "tail_slack": p.tail_slack,
    })
}

/// Evaluates a generator spec; returns members and gap statistics.
#[wasm_bindgen]
pub fn eval_generator(spec_json: &str) -> String {
    match parse_spec(spec_json) {
        Err(e) => err_json(e),
        Ok(set) => serde_json::json!({
            "horizon": set.effective_horizon(),
            "count": set.count(),
            "members": set.members().collect::<Vec<u32>>(),
            "gaps": profile_json(&set),
        })
        .to_string(),
    }
}

/// Window-scope verdicts at the given parameters.
#[wasm_bindgen]
pub fn classify_set(spec_json: &str, syndetic_n: u32, thick_l: u32) -> String {
    let set = match parse_spec(spec_json) {
        Err(e) => return err_json(e),
        Ok(s) => s,
    };
    let syndetic = syndetic_on_window(&set, syndetic_n)
        .map(|v| v.holds())
        .ok();
    let thick = thick_on_window(&set, thick_l).map(|v| v.holds()).ok();
    serde_json::json!({ "syndetic": syndetic, "thick": thick }).to_string()
}

/// Runs the shift-punch engine on the generated set (with 0 appended) and
/// reports the punch windows, the derived set, and the L(ℓ) gap table.
#[wasm_bindgen]
pub fn punch_demo(spec_json: &str, steps: u32) -> String {
    let set = match parse_spec(spec_json) {
        Err(e) => return err_json(e),
        Ok(s) => s,
    };
    let trace = match run(&set.with_zero(), steps) {
        Err(e) => return err_json(e),
        Ok(t) => t,
    };
    let windows: Vec<(u32, u32)> = trace
        .steps
        .iter()
        .map(|s| match s.window {
            Some(DyadicInterval::Block { start, log_size }) => (start, 1u32 << log_size),
            _ => (s.n, 0),
        })
        .collect();
    let max_ell = if steps >= 2 { steps.ilog2() } else { 0 };
    let lgaps: Vec<(u32, Option<u32>)> = (0..=max_ell.min(8))
        .map(|ell| {
            let l = l_set(&trace, ell);
            (ell, positive_part_profile(&l).covering_gap)
        })
        .collect();
    serde_json::json!({
        "steps": steps,
        "windows": windows,
        "derived": trace.derived_b.members().collect::<Vec<u32>>(),
        "lset_gaps": lgaps,
    })
    .to_string()
}
