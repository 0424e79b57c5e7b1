//! One function per subcommand, each returning a `Report`.

use serde_json::json;
use thue_area::extremal::{conjecture_report, ExtremalOptions, TWO_PI};
use thue_area::forms::{rational_to_f64, DEFAULT_ROOT_TOL};
use thue_area::thue::{box_points, count_box, definite_points, mahler_table, CountStrategy, LatticeCount, Strategy};
use thue_area::{
    area as area_of, discriminant_exact, discriminant_float, invariant as invariant_of, make_fstar, make_pk,
    parse_form, roots, BinaryForm, Result,
};

use crate::output::{num, Report, Table};

pub const BOX_CAVEAT: &str =
    "box-restricted: counts only points with max(|x|,|y|) <= halfwidth; the full solution set may be larger or infinite";

/// Gap above which an extremal estimate exceeding `invariant(F_n*)` is
/// flagged rather than attributed to optimiser noise.
pub const FSTAR_EXCESS_TOL: f64 = 1e-4;

pub fn area(src: &str, tol: f64) -> Result<Report> {
    let f = parse_form(src)?;
    let r = area_of(&f, tol)?;
    let mut table = Table::new(&["area", "error_estimate", "panels", "evaluations", "singular_angles"]);
    let angles: Vec<String> = r.singular_angles.iter().map(|&a| num(a)).collect();
    table.push([
        num(r.area),
        num(r.abs_error_estimate),
        r.panels.to_string(),
        r.evaluations.to_string(),
        angles.join(";"),
    ]);
    Ok(Report {
        json: json!({
            "form": f.to_string(),
            "area": r.area,
            "error_estimate": r.abs_error_estimate,
            "singular_angles": r.singular_angles,
            "panels": r.panels,
            "evaluations": r.evaluations,
        }),
        table,
    })
}

pub fn invariant(src: &str, tol: f64) -> Result<Report> {
    let f = parse_form(src)?;
    let v = invariant_of(&f, tol)?;
    let mut table = Table::new(&["invariant", "disc_magnitude", "area"]);
    table.push([num(v.value), num(v.disc_magnitude), num(v.area)]);
    Ok(Report {
        json: json!({
            "form": f.to_string(),
            "invariant": v.value,
            "disc_magnitude": v.disc_magnitude,
            "area": v.area,
        }),
        table,
    })
}

pub fn disc(src: &str) -> Result<Report> {
    let f = parse_form(src)?;
    let (text, re, im, exact) = if f.is_exact() {
        let d = discriminant_exact(&f)?;
        (d.to_string(), rational_to_f64(&d), 0.0, true)
    } else {
        let d = discriminant_float(&roots(&f, DEFAULT_ROOT_TOL)?);
        (format!("{}", d), d.re, d.im, false)
    };
    let mut table = Table::new(&["discriminant", "exact", "value", "value_im"]);
    table.push([text.clone(), exact.to_string(), num(re), num(im)]);
    Ok(Report {
        json: json!({
            "form": f.to_string(),
            "discriminant": text,
            "exact": exact,
            "value": re,
            "value_im": im,
        }),
        table,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMode {
    Definite,
    Box(u64),
}

pub fn count(src: &str, h: u64, mode: CountMode, with_points: bool) -> Result<Report> {
    let f = parse_form(src)?;
    let (result, points) = match mode {
        CountMode::Definite => {
            let (pts, radius) = definite_points(&f, h)?;
            let c = LatticeCount {
                count: pts.len() as u64,
                h,
                strategy: Strategy::DefiniteExact,
                halfwidth: None,
                radius: Some(radius),
            };
            (c, Some(pts))
        }
        CountMode::Box(w) => {
            let c = count_box(&f, h, w)?;
            let pts = if with_points { Some(box_points(&f, h, w)?) } else { None };
            (c, pts)
        }
    };
    let strategy = serde_json::to_value(result.strategy).expect("enum serialises");
    let caveat = (result.strategy == Strategy::BoxRestricted).then_some(BOX_CAVEAT);
    let mut json = json!({
        "form": f.to_string(),
        "count": result.count,
        "h": h,
        "strategy": strategy,
        "halfwidth": result.halfwidth,
        "radius": result.radius,
        "caveat": caveat,
    });
    let table = match &points {
        Some(pts) => {
            json["points"] = json!(pts.iter().map(|&(x, y)| [x, y]).collect::<Vec<_>>());
            let mut t = Table::new(&["x", "y"]);
            for &(x, y) in pts {
                t.push([x, y]);
            }
            t
        }
        None => {
            let mut t = Table::new(&["count", "h", "strategy", "halfwidth"]);
            t.push([
                result.count.to_string(),
                h.to_string(),
                strategy.as_str().unwrap_or_default().to_string(),
                result.halfwidth.map(|w| w.to_string()).unwrap_or_default(),
            ]);
            t
        }
    };
    Ok(Report { json, table })
}

pub fn mahler(src: &str, h_list: &[u64], halfwidth: Option<u64>, tol: f64) -> Result<Report> {
    let f = parse_form(src)?;
    let strategy = match halfwidth {
        Some(w) => CountStrategy::Box(w),
        None => CountStrategy::Definite,
    };
    let rows = mahler_table(&f, h_list, strategy, tol)?;
    let max_scaled = rows.iter().map(|r| r.scaled_error).fold(0.0, f64::max);
    let mut table = Table::new(&["h", "n_count", "area_term", "scaled_error"]);
    for r in &rows {
        table.push([r.h.to_string(), r.n_count.to_string(), num(r.area_term), num(r.scaled_error)]);
    }
    let (name, caveat) = match strategy {
        CountStrategy::Definite => ("definite-exact", None),
        CountStrategy::Box(_) => ("box-restricted", Some(BOX_CAVEAT)),
    };
    Ok(Report {
        json: json!({
            "form": f.to_string(),
            "strategy": name,
            "halfwidth": halfwidth,
            "caveat": caveat,
            "rows": rows,
            "max_scaled_error": max_scaled,
        }),
        table,
    })
}

pub fn extremal(n_max: usize, opts: &ExtremalOptions) -> Result<Report> {
    let rows = conjecture_report(n_max, opts)?;
    let mut violations = Vec::new();
    for r in &rows {
        if !r.monotone {
            violations.push(format!("n={}: estimate does not decrease", r.n));
        }
        if !r.above_two_pi {
            violations.push(format!("n={}: estimate is not above 2 pi", r.n));
        }
        if r.fstar_excess > FSTAR_EXCESS_TOL {
            violations.push(format!("n={}: estimate exceeds invariant(F_n*) by {:e}", r.n, r.fstar_excess));
        }
    }
    let mut table = Table::new(&[
        "n",
        "mn_estimate",
        "fstar_invariant",
        "fstar_excess",
        "gap_to_two_pi",
        "monotone",
        "above_two_pi",
        "converged",
        "distance_to_fstar",
    ]);
    for r in &rows {
        table.push([
            r.n.to_string(),
            num(r.mn_estimate),
            num(r.fstar_invariant),
            num(r.fstar_excess),
            num(r.gap_to_two_pi),
            r.monotone.to_string(),
            r.above_two_pi.to_string(),
            r.converged.to_string(),
            num(r.distance_to_fstar),
        ]);
    }
    Ok(Report {
        json: json!({
            "two_pi": TWO_PI,
            "restarts": opts.restarts,
            "seed": opts.seed,
            "rows": rows,
            "violations": violations,
        }),
        table,
    })
}

fn coefficients_report(f: &BinaryForm, key: &str, value: u32) -> Report {
    let strings = f.coeff_strings();
    let values: Vec<f64> = f.complex_coeffs().iter().map(|c| c.re).collect();
    let mut table = Table::new(&["index", "coefficient"]);
    for (i, s) in strings.iter().enumerate() {
        table.push([i.to_string(), s.clone()]);
    }
    Report {
        json: json!({
            key: value,
            "degree": f.degree(),
            "form": f.to_string(),
            "coefficients": strings,
            "values": values,
        }),
        table,
    }
}

pub fn pk(k: u32) -> Result<Report> {
    Ok(coefficients_report(&make_pk(k)?, "k", k))
}

pub fn fstar(n: u32) -> Result<Report> {
    Ok(coefficients_report(&make_fstar(n)?, "n", n))
}
