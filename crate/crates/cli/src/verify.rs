//! Batch verification suites behind `stardisc verify`.

use num_bigint::BigUint;
use num_rational::Ratio;
use serde_json::{json, Value};

use stardisc::complexity::{
    claim_bound, has_property_p, hat_n_bound, ln_big, ln_binom_sum_bound, ln_nbound, max_boundary_box, n_recursion,
    packing_condition, sauer_shelah, shatter_count, theorem2_bound, theorem2_epsilon,
};
use stardisc::discrepancy::{lower_bound_sample, star_discrepancy_exact};
use stardisc::generators::{gen_chain, gen_halton, gen_lattice, gen_random, gen_staircase};
use stardisc::witness::{check_bernoulli_inequality, check_case3_rational, theorem1_witness};
use stardisc::{PointSet, Result};

use crate::report::big;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Theorem1,
    Theorem2,
    Figure1,
    Bounds,
}

pub struct Instance {
    pub name: String,
    pub pass: bool,
    pub data: Value,
}

impl Instance {
    fn new(name: impl Into<String>, pass: bool, data: Value) -> Self {
        Self { name: name.into(), pass, data }
    }

    pub fn to_value(&self) -> Value {
        json!({ "name": self.name, "pass": self.pass, "data": self.data })
    }
}

pub fn run(suite: Suite, seeds: u64) -> Result<Vec<Instance>> {
    match suite {
        Suite::Theorem1 => theorem1(seeds),
        Suite::Theorem2 => theorem2(),
        Suite::Figure1 => figure1(),
        Suite::Bounds => bounds(),
    }
}

fn witness_instance(name: String, ps: &PointSet, with_exact: bool) -> Result<Instance> {
    let floor = ps.dim() as f64 / (12.0 * ps.len() as f64);
    let cert = theorem1_witness(ps)?;
    let mut pass = cert.guarantee_valid && cert.measured >= floor;
    let mut data = json!({
        "n": ps.len(),
        "d": ps.dim(),
        "case": cert.case.as_str(),
        "measured": cert.measured,
        "floor": floor,
        "margin": cert.measured - floor,
        "guarantee_valid": cert.guarantee_valid,
    });
    if with_exact {
        let exact = star_discrepancy_exact(ps)?.value;
        pass &= exact >= floor;
        data["exact"] = json!(exact);
    }
    Ok(Instance::new(name, pass, data))
}

fn theorem1(seeds: u64) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for s in 0..seeds {
        out.push(witness_instance(format!("random n=500 d=2 seed={s}"), &gen_random(500, 2, s)?, true)?);
    }
    let families = [
        ("chain n=500 d=2", gen_chain(500, 2)?),
        ("staircase n=500", gen_staircase(500)?),
        ("lattice m=23 d=2", gen_lattice(23, 2)?),
        ("halton n=500 d=2", gen_halton(500, 2)?),
    ];
    for (name, ps) in families {
        out.push(witness_instance(name.into(), &ps, true)?);
    }
    for s in 0..seeds.min(20) {
        out.push(witness_instance(format!("random n=750 d=3 seed={s}"), &gen_random(750, 3, s)?, false)?);
    }
    Ok(out)
}

fn theorem2() -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for n in [4usize, 9, 16] {
        for d in [2usize, 4, 8] {
            let chain = gen_chain(n, d)?;
            let p2 = has_property_p(&chain, Ratio::from_integer(2))?;
            let traces = shatter_count(&chain)?;
            let pass = p2 && traces == BigUint::from(n + 1);
            out.push(Instance::new(
                format!("chain n={n} d={d}"),
                pass,
                json!({ "property_p_2": p2, "shatter_count": big(&traces) }),
            ));
        }
    }
    let stairs = gen_staircase(9)?;
    let p2 = has_property_p(&stairs, Ratio::from_integer(2))?;
    out.push(Instance::new("staircase n=9 violates P(2)", !p2, json!({ "property_p_2": p2 })));

    let chain = gen_chain(16, 8)?;
    let hyp = has_property_p(&chain, Ratio::new(8, 4))?;
    let sample = lower_bound_sample(&chain, 100_000, 1)?;
    let bound = theorem2_bound(16, 8)?;
    out.push(Instance::new(
        "chain n=16 d=8 sampled discrepancy",
        hyp && sample.value >= bound,
        json!({
            "property_p_d_over_4": hyp,
            "sampled": sample.value,
            "bound": bound,
            "ratio": sample.value / bound,
            "box": sample.corner.upper().to_vec(),
        }),
    ));
    Ok(out)
}

fn figure1() -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for (name, ps, traces, boundary) in
        [("chain n=9 d=2", gen_chain(9, 2)?, 10u32, 1usize), ("staircase n=9", gen_staircase(9)?, 46, 2)]
    {
        let count = shatter_count(&ps)?;
        let (b, m) = max_boundary_box(&ps)?;
        out.push(Instance::new(
            name,
            count == BigUint::from(traces) && m == boundary,
            json!({
                "shatter_count": big(&count),
                "expected": traces,
                "max_boundary": m,
                "max_boundary_box": b.upper().to_vec(),
                "sauer_shelah": big(&sauer_shelah(9, 2)),
            }),
        ));
    }
    Ok(out)
}

fn bounds() -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    let mismatches: Vec<(u64, u64)> =
        (1..=30).flat_map(|n| (1..=10).map(move |d| (n, d))).filter(|&(n, d)| n_recursion(n, d) != sauer_shelah(n, d)).collect();
    out.push(Instance::new(
        "recursion equals binomial sum for n<=30, d<=10",
        mismatches.is_empty(),
        json!({ "mismatches": mismatches.len() }),
    ));

    let bern = check_bernoulli_inequality(2001, 2001)?;
    out.push(Instance::new(
        "reverse Bernoulli inequality on 2001x2001 grid",
        bern.verified,
        json!({ "min": bern.min_value, "x": bern.argmin_x, "q": bern.argmin_q }),
    ));
    let rat = check_case3_rational(100_000)?;
    out.push(Instance::new(
        "case-3 rational function >= 1/12 on 1e5 grid",
        rat.min_value >= 1.0 / 12.0 - 1e-12,
        json!({ "min": rat.min_value, "q": rat.argmin_q }),
    ));

    for d in 1..=16u64 {
        let r = d.div_ceil(4);
        for n in [d, 2 * d, 10 * d, 100 * d] {
            let sauer = sauer_shelah(n, d);
            let hat = hat_n_bound(n, d, r);
            let claim = claim_bound(n, d, r);
            let ln_binom = ln_binom_sum_bound(n, d)?;
            let ln_nb = ln_nbound(n, d)?;
            let packing = packing_condition(n, d, theorem2_epsilon(n, d)?)?;
            let pass = ln_big(&sauer) <= ln_binom && hat <= claim && ln_big(&hat) <= ln_nb && packing;
            out.push(Instance::new(
                format!("bound chain n={n} d={d} r={r}"),
                pass,
                json!({
                    "sauer": big(&sauer),
                    "hat_n": big(&hat),
                    "claim": big(&claim),
                    "ln_binom_sum_bound": ln_binom,
                    "ln_nbound": ln_nb,
                    "packing_ok": packing,
                }),
            ));
        }
    }
    Ok(out)
}
