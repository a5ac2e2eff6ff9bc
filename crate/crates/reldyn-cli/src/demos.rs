//! Built-in demonstrations. Each prints a self-documenting narrative with
//! its default parameters, exact quantities next to decimal approximations,
//! and exits 0 exactly when the demonstrated claim is confirmed.

use std::process::ExitCode;

use reldyn::axioms::{self, generators, Verdict};
use reldyn::dynamics::{mass_dependence_witness, resolve_collision, BodyState};
use reldyn::quantity::Quantity;

fn q(text: &str) -> Quantity {
    text.parse().expect("built-in literals parse")
}

pub fn run(name: &str, seed: u64, batch: Option<u64>, summary: bool) -> Result<ExitCode, String> {
    match name {
        "thm1" => mass_formula(seed, batch.unwrap_or(20), summary),
        "thm1-construction" => mass_formula_construction(seed, batch.unwrap_or(5), summary),
        "thm2-batch" => equivalence_batch(seed, batch.unwrap_or(1000), summary),
        "emc2" => emc2(summary),
        "massdepend" => mass_dependence(summary),
        "counterexample" => counterexample(summary),
        other => Err(format!(
            "unknown demo `{other}`; known: thm1, thm1-construction, thm2-batch, emc2, massdepend, counterexample"
        )),
    }
}

fn confirmed(ok: bool, claim: &str, summary: bool) -> ExitCode {
    if summary {
        println!("demo={claim} confirmed={ok}");
    } else if ok {
        println!("confirmed: {claim}");
    } else {
        println!("NOT confirmed: {claim}");
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn mass_formula(seed: u64, batch: u64, summary: bool) -> Result<ExitCode, String> {
    if !summary {
        println!("mass formula m0 = sqrt(1 - v^2) * m(v), checked exactly on");
        println!("{batch} generated standard models (seed {seed}), dimensions 3 and 4");
    }
    let mut all_ok = true;
    for i in 0..batch {
        let dim = if i % 2 == 0 { 3 } else { 4 };
        let s = generators::random_standard_model(seed.wrapping_add(i), dim)
            .map_err(|e| e.to_string())?;
        let report = axioms::verify_mass_formula(&s).map_err(|e| e.to_string())?;
        if report.verdict == Verdict::Fails {
            all_ok = false;
            print!("{}", report.render_text());
        }
    }
    Ok(confirmed(
        all_ok,
        "the mass formula holds on every generated model",
        summary,
    ))
}

fn mass_formula_construction(seed: u64, batch: u64, summary: bool) -> Result<ExitCode, String> {
    if !summary {
        println!("geometric derivation of the mass formula, step by step;");
        println!("pinned pair (m0, v) = (1, 3/5) plus {batch} seeded pairs");
    }
    let mut all_ok = true;
    let mut run_pair = |m0: Quantity, v: Quantity| -> Result<(), String> {
        let report =
            axioms::verify_mass_formula_construction(&m0, &v).map_err(|e| e.to_string())?;
        if !summary {
            print!("{}", report.render_text());
        }
        all_ok &= report.verdict == Verdict::Holds;
        Ok(())
    };
    run_pair(q("1"), q("3/5"))?;
    for i in 0..batch {
        let numer = 1 + ((seed + i) % 7) as i64;
        let denom = numer + 1 + ((seed + 3 * i) % 5) as i64;
        let m0 = Quantity::ratio(1 + ((seed + i) % 4) as i64, 1 + (i % 3) as i64);
        run_pair(m0, Quantity::ratio(numer, denom))?;
    }
    Ok(confirmed(
        all_ok,
        "every step of the derivation holds exactly",
        summary,
    ))
}

fn equivalence_batch(seed: u64, batch: u64, summary: bool) -> Result<ExitCode, String> {
    if !summary {
        println!("equivalence of the center-line postulate with the conservation laws,");
        println!("checked on {batch} seeded scenarios (seed {seed}), half deliberately corrupted");
    }
    let mut agree = 0u64;
    let mut disagree = 0u64;
    for index in 0..batch {
        let (s, _kind) =
            generators::equivalence_batch_scenario(seed, index).map_err(|e| e.to_string())?;
        let report = axioms::verify_conservation_equivalence(&s).map_err(|e| e.to_string())?;
        if report.verdict == Verdict::Holds {
            agree += 1;
        } else {
            disagree += 1;
            if !summary {
                println!("disagreement at index {index}:");
                print!("{}", report.render_text());
            }
        }
    }
    if !summary {
        println!("{agree} scenarios agree, {disagree} disagree");
    }
    Ok(confirmed(
        disagree == 0,
        "the four formulations agree on every scenario",
        summary,
    ))
}

fn emc2(summary: bool) -> Result<ExitCode, String> {
    let m0 = q("1");
    let v = q("3/5");
    let b = BodyState::new(m0.clone(), vec![v.clone()]);
    let c = BodyState::new(m0.clone(), vec![-&v]);
    let out = resolve_collision(&b, &c).map_err(|e| e.to_string())?;
    let sum_of_rest_masses = &m0 + &m0;
    if !summary {
        println!("two bodies of rest mass {m0} collide head-on at speed {v} each");
        println!(
            "merged body: velocity {}, relativistic mass {} (~{})",
            out.velocity[0],
            out.mass,
            out.mass.approx(5)
        );
        println!(
            "its rest mass {} (~{}) exceeds the input total {}",
            out.rest_mass,
            out.rest_mass.approx(5),
            sum_of_rest_masses
        );
        println!("the excess is rest mass created from kinetic energy");
    }
    let ok = out.velocity[0].is_zero()
        && out.rest_mass == q("5/2")
        && out.rest_mass > sum_of_rest_masses;
    Ok(confirmed(
        ok,
        "rest mass 5/2 > 2 is created in the symmetric collision",
        summary,
    ))
}

fn mass_dependence(summary: bool) -> Result<ExitCode, String> {
    let (ratio_here, ratio_median) =
        mass_dependence_witness(&q("1"), &q("1"), &q("3/5"), &q("0")).map_err(|e| e.to_string())?;
    if !summary {
        println!("mass ratios of the same colliding pair for two observers:");
        println!(
            "  in the original frame: {} (~{})",
            ratio_here,
            ratio_here.approx(5)
        );
        println!(
            "  in the median frame:   {} (~{})",
            ratio_median,
            ratio_median.approx(5)
        );
        println!("relativistic mass necessarily depends on the observer");
    }
    let ok = ratio_here == q("5/4") && ratio_median == q("1") && ratio_here != ratio_median;
    Ok(confirmed(ok, "the two mass ratios differ exactly", summary))
}

fn counterexample(summary: bool) -> Result<ExitCode, String> {
    let mut ok = true;
    for (label, scenario, failing) in [
        (
            "mass conservation",
            generators::generate_cons_mass_counterexample().map_err(|e| e.to_string())?,
            "ConsMass",
        ),
        (
            "momentum conservation",
            generators::generate_cons_moment_counterexample().map_err(|e| e.to_string())?,
            "ConsMoment",
        ),
    ] {
        if !summary {
            println!("counterexample model against {label}:");
        }
        for name in [
            "AxSelf",
            "AxPh",
            "AxEv",
            "AxSimDist",
            "AxThEx",
            "AxForallInecoll",
            "AxExistsInecoll",
            "AxMedian",
            "AxSpeed",
            "AxCenter",
        ] {
            let report = axioms::run_check(&scenario, name)
                .expect("known name")
                .map_err(|e| e.to_string())?;
            ok &= report.passed();
            if !summary {
                println!("  {} {}", report.name, report.verdict);
            }
        }
        let broken = axioms::run_check(&scenario, failing)
            .expect("known name")
            .map_err(|e| e.to_string())?;
        ok &= broken.verdict == Verdict::Fails;
        if !summary {
            println!("  {} {}  <- the independence target", broken.name, broken.verdict);
            for (key, value) in &broken.counterwitness {
                println!("    witness {key} = {value}");
            }
        }
    }
    Ok(confirmed(
        ok,
        "the geometric axioms hold while the conservation law fails",
        summary,
    ))
}
