use std::fs;

use dold_core::f2algebra::Presentation;
use dold_core::involutions::{check_action, ActionKind};
use dold_core::lefschetz::{
    carlsson_check, frk_table, lefschetz_number, max_free_rank_bruteforce,
    mod2_rigidity_search, theorem_bound, theorem_bound_applies, trace_oracle,
};
use dold_core::spaces::{conjectured_frk2_dold_general, product_cohomology};
use dold_core::spectral::{
    case1, case2, compare_presentation, presentation1, presentation2, presentation2_ring, CaseRun,
};
use dold_core::{
    Error, Flavor, Nilpotency, Polynomial, ProductSpace, QuotientAlgebra, Result, SignAutomorphism,
};
use serde_json::{json, Value};

use crate::report::Report;
use crate::{Command, CoindexArgs, SsCase};

const SAMPLED: &str = "sampled evidence only";
const CONJECTURAL: &str = "conjectural value";

pub fn run(command: &Command) -> Result<Report> {
    match command {
        Command::Betti { space } => betti(space),
        Command::Lefschetz {
            space,
            signs,
            trace_limit,
        } => lefschetz_cmd(space, signs, *trace_limit),
        Command::Maxrank { space, budget } => maxrank(space, *budget),
        Command::Frk { space, prime } => frk(space, *prime),
        Command::Carlsson { space } => carlsson(space),
        Command::Conjecture { space } => conjecture(space),
        Command::Ss { case } => ss(case),
        Command::Coindex(args) => coindex(args),
        Command::Involution {
            kind,
            m,
            n,
            samples,
            seed,
            tol,
        } => involution(kind, *m, *n, *samples, *seed, *tol),
        Command::Rigidity {
            size,
            prime,
            bound,
            budget,
        } => rigidity(*size, *prime, *bound, *budget),
    }
}

fn space_inputs(x: &ProductSpace) -> Value {
    json!({"space": x.to_string(), "flavor": x.flavor()})
}

fn with_bound_warning(report: Report, x: &ProductSpace) -> Report {
    if theorem_bound_applies(x) {
        report
    } else {
        report.warn(format!(
            "the rank bound for {x} is proved only when every first parameter is even; \
             the formula value is reported without that guarantee"
        ))
    }
}

fn betti(space: &str) -> Result<Report> {
    let x: ProductSpace = space.parse()?;
    let top = x.manifold_dimension();
    let algebra = product_cohomology(&x)?;
    let duality = algebra.poincare_duality_check(top);
    let mut report = Report::new("betti", space_inputs(&x))
        .result(json!({
            "dimension": top,
            "series": duality.series,
            "component_count": x.component_count(),
            "whole_space_series": x.poincare_polynomial(),
            "betti_sum": x.betti_sum(),
            "duality": duality.holds,
            "palindromic": duality.palindromic,
            "top_dimension": duality.top_dimension,
        }))
        .provenance("Gröbner basis of the product presentation; series by standard-monomial count");
    if x.flavor() == Flavor::RpCp {
        report = report.provenance("RP(m)xCP(n) shares its mod 2 cohomology ring with P(m,n)");
    }
    if x.component_count() > 1 {
        report = report.warn("series refers to one component; whole_space_series counts all");
    }
    Ok(report)
}

fn lefschetz_cmd(space: &str, signs: &str, limit: usize) -> Result<Report> {
    let x: ProductSpace = space.parse()?;
    let g: SignAutomorphism = signs.parse()?;
    let tau = lefschetz_number(&g, &x)?;
    let oracle = trace_oracle(&g, &x, limit)?;
    let mut inputs = space_inputs(&x);
    inputs["signs"] = json!(g.to_string());
    inputs["trace_limit"] = json!(limit);
    let mut report = Report::new("lefschetz", inputs)
        .result(json!({
            "tau": tau,
            "trace_oracle": oracle,
            "agree": tau == oracle,
            "signs": g,
        }))
        .provenance("product formula over factors")
        .provenance("independent check: traces on the standard monomial basis");
    if x.k0() < x.k() {
        report = report.warn("S(0) factors: value refers to one component");
    }
    Ok(report)
}

fn maxrank(space: &str, budget: u64) -> Result<Report> {
    let x: ProductSpace = space.parse()?;
    let found = max_free_rank_bruteforce(&x, budget)?;
    let certificate: Vec<String> = found.certificate.basis.iter().map(|g| g.to_string()).collect();
    let bound = theorem_bound(&x);
    let mut inputs = space_inputs(&x);
    inputs["budget"] = json!(budget);
    let report = Report::new("maxrank", inputs)
        .result(json!({
            "rank": found.rank,
            "bound": bound,
            "matches_bound": found.rank as u32 == bound,
            "certificate": certificate,
            "candidates_examined": found.candidates_examined,
        }))
        .provenance("exhaustive search over subgroups of valid sign automorphisms")
        .provenance("a subgroup counts when every nonidentity element has Lefschetz number 0");
    Ok(report)
}

fn frk(space: &str, prime: u64) -> Result<Report> {
    let x: ProductSpace = space.parse()?;
    let value = frk_table(&x, prime)?;
    let mut inputs = space_inputs(&x);
    inputs["prime"] = json!(prime);
    let report = Report::new("frk", inputs)
        .result(json!({"frk": value, "prime": prime}))
        .provenance("free rank of mod 2 cohomologically trivial actions")
        .provenance("odd primes: every such action has a fixed point");
    Ok(if prime == 2 {
        with_bound_warning(report, &x)
    } else {
        report
    })
}

fn carlsson(space: &str) -> Result<Report> {
    let x: ProductSpace = space.parse()?;
    let c = carlsson_check(&x);
    let report = Report::new("carlsson", space_inputs(&x))
        .result(json!({
            "betti_sum": c.betti_sum,
            "rank": theorem_bound(&x),
            "threshold": c.threshold,
            "holds": c.holds,
        }))
        .provenance("total mod 2 Betti number against 2 to the rank bound");
    Ok(with_bound_warning(report, &x))
}

fn conjecture(space: &str) -> Result<Report> {
    let x: ProductSpace = space.parse()?;
    if x.flavor() != Flavor::Dold {
        return Err(Error::Domain(format!("{x} is not a product of Dold manifolds")));
    }
    let factors: Vec<(u32, u32)> = x.factors().iter().map(|f| (f.sphere_dim, f.cp_dim)).collect();
    let value = conjectured_frk2_dold_general(&factors);
    Ok(Report::new("conjecture", space_inputs(&x))
        .result(json!({"frk2": value, "theorem_bound": theorem_bound(&x)}))
        .provenance("sum of eta(m_i) + mu(n_i) over factors")
        .warn(CONJECTURAL))
}

fn case_result(case: &CaseRun, expected: &QuotientAlgebra) -> Result<Value> {
    let comparison = compare_presentation(&case.series, expected, case.dimension)?;
    Ok(json!({
        "dimension": case.dimension,
        "cap": case.run.cap,
        "exact_through": case.run.exact_through,
        "degeneration_page": case.run.degeneration_page,
        "series": case.series,
        "total_dimension": case.total_dimension,
        "regular_sequence": case.regular_sequence,
        "presentation_match": comparison.equal,
        "presentation_series": comparison.expected,
        "first_mismatch": comparison.first_mismatch,
        "pages": case.run.pages,
    }))
}

fn bits(pair: [bool; 2]) -> [u8; 2] {
    pair.map(u8::from)
}

fn ss(case: &SsCase) -> Result<Report> {
    match case {
        SsCase::Case1 { m, n, cap } => {
            let run = case1(*m, *n, *cap)?;
            let expected = presentation1(*m, *n)?;
            let mut report = Report::new("ss case1", json!({"m": m, "n": n, "cap": cap}))
                .result(case_result(&run, &expected)?)
                .provenance("Serre spectral sequence of P(m,n) -> orbit space -> RP^infinity")
                .provenance("differentials extended as derivations from transgressions");
            for w in &run.warnings {
                report = report.warn(w.clone());
            }
            Ok(report)
        }
        SsCase::Case2 {
            m,
            n,
            alpha,
            beta,
            h,
            cap,
        } => {
            let h_poly = match h {
                Some(text) => Some(Polynomial::parse(&presentation2_ring()?, text)?),
                None => None,
            };
            let expected = presentation2(*m, *n, *alpha, *beta, h_poly.as_ref())?;
            let run = case2(*m, *n, *alpha, *beta, *cap)?;
            let inputs = json!({
                "m": m,
                "n": n,
                "alpha": bits(*alpha),
                "beta": bits(*beta),
                "h": h,
                "cap": cap,
            });
            let mut report = Report::new("ss case2", inputs)
                .result(case_result(&run, &expected)?)
                .provenance("Serre spectral sequence of S^m x CP^n -> orbit space -> B(Z2 x Z2)")
                .provenance("differentials extended as derivations from transgressions");
            for w in &run.warnings {
                report = report.warn(w.clone());
            }
            if h_poly.as_ref().is_some_and(|p| !p.is_zero()) {
                report = report.warn("h changes the ring structure only; the additive series is unaffected");
            }
            Ok(report)
        }
    }
}

fn nilpotency_value(n: Nilpotency) -> Value {
    match n {
        Nilpotency::Index(i) => json!({"coindex": i, "exact": true}),
        Nilpotency::AtLeast { lower_bound, cap } => {
            json!({"coindex_at_least": lower_bound, "cap": cap, "exact": false})
        }
    }
}

fn coindex(args: &CoindexArgs) -> Result<Report> {
    if let Some(dold) = &args.dold {
        let (m, n) = (dold[0], dold[1]);
        let case = args.case.unwrap_or(1);
        if case != 1 {
            return Err(Error::Domain(format!(
                "the --dold shortcut supports case 1 only, got case {case}"
            )));
        }
        let algebra = presentation1(m, n)?;
        let w = Polynomial::variable(algebra.ring(), "x")?;
        let index = algebra.nilpotency_index(&w)?;
        let mut result = nilpotency_value(index);
        if index == Nilpotency::Index(1) {
            result["conclusion"] = json!("no equivariant map from S^k, k >= 2");
        }
        return Ok(Report::new("coindex", json!({"dold": [m, n], "case": case, "class": "x"}))
            .result(result)
            .provenance("orbit-space algebra F2[x,y,z]/(x^2, y^((m+1)/2), z^(n+1))")
            .provenance("an equivariant map S^k -> X forces k <= co-index"));
    }
    let path = args
        .algebra
        .as_ref()
        .ok_or_else(|| Error::Parse("coindex needs --algebra FILE --class NAME or --dold M N --case C".into()))?;
    let class = args.class.as_deref().unwrap_or_default();
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let presentation = Presentation::from_json(&text)?;
    let algebra = presentation.build()?;
    let w = Polynomial::parse(algebra.ring(), class)?;
    let index = algebra.nilpotency_index(&w)?;
    let file = path.file_name().map(|f| f.to_string_lossy().into_owned());
    let mut report = Report::new("coindex", json!({"algebra": file, "class": class}))
        .result(nilpotency_value(index))
        .provenance("largest n with w^n nonzero, by normal form");
    if !algebra.is_finite() {
        report = report.warn("algebra is infinite; powers checked only up to the degree cap");
    }
    Ok(report)
}

fn involution(kind: &str, m: u32, n: u32, samples: usize, seed: u64, tol: f64) -> Result<Report> {
    let kind: ActionKind = kind.parse()?;
    let r = check_action(kind, m, n, samples, seed, tol)?;
    let inputs = json!({"kind": kind, "m": m, "n": n, "samples": samples, "seed": seed, "tol": tol});
    Ok(Report::new("involution", inputs)
        .result(json!({
            "involution_ok": r.involution_ok,
            "free_ok": r.free_ok,
            "order_failures": r.order_failures,
            "fixed_points": r.fixed_points,
            "max_norm_error": r.max_norm_error,
        }))
        .provenance("random points on S^m x CP^n, seeded ChaCha8 streams per chunk")
        .warn(SAMPLED))
}

fn rigidity(size: usize, prime: u32, bound: i64, budget: u64) -> Result<Report> {
    let found = mod2_rigidity_search(size, prime, bound, budget)?;
    let inputs = json!({"size": size, "prime": prime, "bound": bound, "budget": budget});
    Ok(Report::new("rigidity", inputs)
        .result(json!({"count": found.len(), "matrices": found, "none_found": found.is_empty()}))
        .provenance("enumeration of integer matrices congruent to I mod 2 with A^p = I")
        .warn("bounded search: entries limited to the given range"))
}
