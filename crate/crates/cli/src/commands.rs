use std::collections::BTreeMap;
use std::fs;
use std::io::{self, BufReader, Read, Write};
use std::path::Path;

use anyhow::{bail, Context};
use serde_json::json;

use nullray_core::diophantine::{
    conjecture_scan, enumerate_null_directions, k_membership_with, norm_sqr, MembershipConfig,
    VecDisplay,
};
use nullray_core::euclidean::{
    arc_interior_normal_point, fourier_slice_check, normal_bundle_contains, normalized,
    parse_direction_set, read_grid, DirectionSet, GaussianMixture, GridSpec, SliceOptions,
};
use nullray_core::torus::{
    annihilated_up_to, format_polynomial, format_transform_data, kernel_witness,
    numeric_geodesic_integral, parse_directions, parse_polynomial, parse_transform_data,
    recover_coefficients, required_samples, transform as transform_at, transform_data,
    ClosedNullGeodesic, CoefficientFormat,
};
use nullray_core::{LatticeFrequency, Membership, Signature};

use crate::output::{direction_json, fmt_vec, freq_json, record, Table};
use crate::Status;

fn read_text(path: &Path) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

pub fn kset(
    signature: Signature,
    freq_box: i64,
    bound: u32,
    records: bool,
    out: &mut dyn Write,
) -> anyhow::Result<Status> {
    let config = MembershipConfig {
        search_bound: bound,
    };
    let mut table = Table::new(vec!["freq", "in_K", "witness", "method"]);
    let mut status = Status::Ok;
    for freq in LatticeFrequency::in_box(signature, freq_box) {
        let report = k_membership_with(&freq, &config);
        if report.membership == Membership::Unknown {
            status = Status::Unknown;
        }
        if records {
            record(
                out,
                json!({
                    "freq": freq_json(&freq),
                    "in_k": report.membership.as_str(),
                    "witness": report.witness.as_ref().map(direction_json),
                    "method": report.method.as_str(),
                }),
            )?;
        } else {
            table.push(vec![
                freq.to_string(),
                report.membership.to_string(),
                report.witness.map_or("-".into(), |w| w.to_string()),
                report.method.to_string(),
            ]);
        }
    }
    if !records {
        table.write(out)?;
    }
    Ok(status)
}

pub fn witness(
    signature: Signature,
    coords: &[i64],
    bound: u32,
    kernel: bool,
    records: bool,
    out: &mut dyn Write,
) -> anyhow::Result<Status> {
    if coords.len() != signature.dim() {
        bail!(
            "signature {signature} needs {} coordinates, got {}",
            signature.dim(),
            coords.len()
        );
    }
    let freq = LatticeFrequency::from_coords(signature, coords.to_vec())?;
    let report = k_membership_with(
        &freq,
        &MembershipConfig {
            search_bound: bound,
        },
    );
    let valid = report.witness.as_ref().map(|w| {
        norm_sqr(w.v()) != 0 && norm_sqr(w.v()) == norm_sqr(w.w()) && w.is_witness_for(&freq)
    });
    let mut status = match (report.membership, valid) {
        (_, Some(false)) => Status::VerificationFailed,
        (Membership::Unknown, _) => Status::Unknown,
        _ => Status::Ok,
    };

    let mut kernel_text = None;
    if kernel && report.membership == Membership::NotMember {
        let poly = kernel_witness(&freq)?;
        if !annihilated_up_to(&poly, bound) {
            status = Status::VerificationFailed;
        }
        kernel_text = Some(format_polynomial(&poly));
    } else if kernel && signature.n1.min(signature.n2) >= 2 {
        bail!("signature {signature} has no kernel: the transform is injective");
    }

    if records {
        record(
            out,
            json!({
                "freq": freq_json(&freq),
                "in_k": report.membership.as_str(),
                "witness": report.witness.as_ref().map(direction_json),
                "method": report.method.as_str(),
                "verified": valid,
                "kernel": kernel_text,
            }),
        )?;
    } else {
        writeln!(out, "freq     {freq}")?;
        writeln!(out, "in_K     {}", report.membership)?;
        writeln!(out, "method   {}", report.method)?;
        match &report.witness {
            Some(w) => writeln!(out, "witness  {w}")?,
            None => writeln!(out, "witness  -")?,
        }
        if let Some(text) = kernel_text {
            writeln!(
                out,
                "# kernel element, annihilated by every direction up to {bound}"
            )?;
            write!(out, "{text}")?;
        }
    }
    Ok(status)
}

pub struct TransformArgs<'a> {
    pub input: &'a Path,
    pub directions: Option<&'a Path>,
    pub bound: u32,
    pub offset: Option<&'a [f64]>,
    pub tolerance: f64,
    pub records: bool,
}

pub fn transform<C: CoefficientFormat>(
    args: &TransformArgs,
    out: &mut dyn Write,
) -> anyhow::Result<Status> {
    let f = parse_polynomial::<C>(&read_text(args.input)?)?;
    let signature = f.signature();
    let directions = match args.directions {
        Some(path) => {
            let (s, dirs) = parse_directions(&read_text(path)?)?;
            if s != signature {
                bail!("directions have signature {s}, polynomial has {signature}");
            }
            dirs
        }
        None => enumerate_null_directions(signature, args.bound),
    };

    let Some(offset) = args.offset else {
        let data = transform_data(&f, &directions)?;
        if args.records {
            for (d, values) in &data {
                let terms: Vec<_> = values
                    .iter()
                    .map(|(freq, c)| {
                        let (re, im) = c.format_parts();
                        json!({ "freq": freq_json(freq), "re": re, "im": im })
                    })
                    .collect();
                record(
                    out,
                    json!({ "direction": direction_json(d), "terms": terms }),
                )?;
            }
        } else {
            write!(out, "{}", format_transform_data(signature, &data))?;
        }
        return Ok(Status::Ok);
    };

    if offset.len() != signature.dim() {
        bail!(
            "offset needs {} entries, got {}",
            signature.dim(),
            offset.len()
        );
    }
    let mut status = Status::Ok;
    let mut table = Table::new(vec!["direction", "re", "im", "quadrature_deviation"]);
    for d in directions {
        let g = ClosedNullGeodesic::new(d.clone(), offset)?;
        let value = transform_at(&f, &g)?;
        let numeric = numeric_geodesic_integral(&f, &g, required_samples(&f, &d))?;
        let deviation = (value - numeric).norm();
        if deviation.is_nan() || deviation > args.tolerance {
            status = Status::VerificationFailed;
        }
        if args.records {
            record(
                out,
                json!({ "direction": direction_json(&d), "re": value.re, "im": value.im, "deviation": deviation }),
            )?;
        } else {
            table.push(vec![
                d.to_string(),
                format!("{:.15e}", value.re),
                format!("{:.15e}", value.im),
                format!("{deviation:.2e}"),
            ]);
        }
    }
    if !args.records {
        table.write(out)?;
    }
    Ok(status)
}

pub fn recover<C: CoefficientFormat>(
    input: &Path,
    freq_box: i64,
    records: bool,
    out: &mut dyn Write,
) -> anyhow::Result<Status> {
    let (signature, data) = parse_transform_data::<C>(&read_text(input)?)?;
    let recovery = recover_coefficients(signature, &data, freq_box)?;
    let in_k: Vec<&LatticeFrequency> = recovery
        .unrecoverable
        .iter()
        .filter(|f| {
            k_membership_with(f, &MembershipConfig::default()).membership == Membership::Member
        })
        .collect();
    if !in_k.is_empty() {
        eprintln!(
            "note: {} unrecoverable frequencies lie in K; the direction bound is too small to see them",
            in_k.len()
        );
    }
    if records {
        let zero = C::zero();
        let mut all: BTreeMap<&LatticeFrequency, Option<&C>> = recovery
            .recovered
            .iter()
            .map(|(f, c)| (f, Some(c)))
            .collect();
        all.extend(recovery.unrecoverable.iter().map(|f| (f, None)));
        for (freq, c) in all {
            let value = c.map(|c| {
                if *c == zero {
                    ("0".to_string(), "0".to_string())
                } else {
                    c.format_parts()
                }
            });
            record(
                out,
                json!({
                    "freq": freq_json(freq),
                    "status": if value.is_some() { "recovered" } else { "unrecoverable" },
                    "re": value.as_ref().map(|v| &v.0),
                    "im": value.as_ref().map(|v| &v.1),
                }),
            )?;
        }
    } else {
        write!(
            out,
            "{}",
            format_polynomial(&recovery.polynomial(signature))
        )?;
        for freq in &recovery.unrecoverable {
            writeln!(
                out,
                "# unrecoverable {} {}",
                VecDisplay(freq.k()),
                VecDisplay(freq.p())
            )?;
        }
    }
    Ok(Status::Ok)
}

pub struct SliceArgs<'a> {
    pub input: Option<&'a Path>,
    pub direction: &'a [f64],
    pub shift: Option<&'a [f64]>,
    pub size: usize,
    pub half_width: f64,
    pub tolerance: f64,
}

pub fn slice_check(args: &SliceArgs, records: bool, out: &mut dyn Write) -> anyhow::Result<Status> {
    let dim = args.direction.len();
    let field = match args.input {
        Some(path) => {
            let file =
                fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
            read_grid(BufReader::new(file))?
        }
        None => {
            let center = args.shift.map_or(vec![0.0; dim], <[f64]>::to_vec);
            if center.len() != dim {
                bail!("shift needs {dim} entries, got {}", center.len());
            }
            GaussianMixture::single(dim, center, 1.0).sample(GridSpec::centered(
                dim,
                args.size,
                args.half_width,
            )?)?
        }
    };
    if args.direction.iter().all(|&x| x == 0.0) {
        bail!("direction must be nonzero");
    }
    let v = normalized(args.direction);
    let report = fourier_slice_check(&field, &v, &SliceOptions::default())?;
    let pass = report.max_deviation <= args.tolerance;
    if records {
        record(
            out,
            json!({
                "direction": v,
                "method": format!("{:?}", report.method).to_lowercase(),
                "samples": report.samples,
                "max_deviation": report.max_deviation,
                "max_reference": report.max_reference,
                "pass": pass,
            }),
        )?;
    } else {
        writeln!(out, "direction      {}", fmt_vec(&v))?;
        writeln!(out, "method         {:?}", report.method)?;
        writeln!(out, "samples        {}", report.samples)?;
        writeln!(out, "max_deviation  {:.3e}", report.max_deviation)?;
        writeln!(out, "max_reference  {:.3e}", report.max_reference)?;
        writeln!(out, "status         {}", if pass { "pass" } else { "FAIL" })?;
    }
    Ok(if pass {
        Status::Ok
    } else {
        Status::VerificationFailed
    })
}

pub fn normal_bundle(
    directions: Option<&Path>,
    light_cone: Option<Signature>,
    point: &[f64],
    certificate: bool,
    records: bool,
    out: &mut dyn Write,
) -> anyhow::Result<Status> {
    let set = match (directions, light_cone) {
        (Some(path), _) => parse_direction_set(&read_text(path)?)?,
        (None, Some(s)) => DirectionSet::light_cone(s),
        (None, None) => bail!("give --directions or --signature"),
    };
    let inside = normal_bundle_contains(&set, point)?;
    let cert = match (&set, certificate) {
        (DirectionSet::Arc(arc), true) => Some((arc_interior_normal_point(arc), arc)),
        (_, true) => bail!("--certificate needs an arc direction set"),
        _ => None,
    };
    let verified = cert.as_ref().map(|(c, arc)| c.certifies(arc, &c.point));
    if records {
        record(
            out,
            json!({
                "point": point,
                "in_normal_bundle": inside,
                "certificate": cert.as_ref().map(|(c, _)| json!({
                    "point": c.point, "inf": c.inf, "sup": c.sup, "radius": c.radius,
                })),
                "certificate_verified": verified,
            }),
        )?;
    } else {
        writeln!(out, "point             {}", fmt_vec(point))?;
        writeln!(out, "in_normal_bundle  {inside}")?;
        if let Some((c, _)) = &cert {
            writeln!(out, "interior_point    {}", fmt_vec(&c.point))?;
            writeln!(out, "dot_range         [{:.6e}, {:.6e}]", c.inf, c.sup)?;
            writeln!(out, "radius            {:.6e}", c.radius)?;
        }
    }
    Ok(if verified == Some(false) {
        Status::VerificationFailed
    } else {
        Status::Ok
    })
}

pub fn scan(
    signature: Signature,
    freq_box: i64,
    bound: u32,
    records: bool,
    out: &mut dyn Write,
) -> anyhow::Result<Status> {
    if signature.n2 != 1 {
        bail!("scan works in signature (n1, 1), got {signature}");
    }
    let report = conjecture_scan(signature.n1, freq_box, bound)?;
    if records {
        for (freq, outcome) in report
            .disagree
            .iter()
            .map(|f| (f, "disagree"))
            .chain(report.unknown.iter().map(|f| (f, "unknown")))
        {
            record(out, json!({ "freq": freq_json(freq), "outcome": outcome }))?;
        }
        record(
            out,
            json!({
                "summary": {
                    "n1": report.n1,
                    "box": report.freq_box,
                    "bound": report.dir_bound,
                    "examined": report.examined,
                    "excluded": report.excluded,
                    "agree_solvable": report.agree_solvable,
                    "agree_unsolvable": report.agree_unsolvable,
                    "disagree": report.disagree.len(),
                    "unknown": report.unknown.len(),
                }
            }),
        )?;
    } else {
        writeln!(out, "signature         {signature}")?;
        writeln!(out, "box               {}", report.freq_box)?;
        writeln!(out, "bound             {}", report.dir_bound)?;
        writeln!(out, "examined          {}", report.examined)?;
        writeln!(out, "excluded          {}", report.excluded)?;
        writeln!(out, "agree_solvable    {}", report.agree_solvable)?;
        writeln!(out, "agree_unsolvable  {}", report.agree_unsolvable)?;
        writeln!(out, "disagree          {}", report.disagree.len())?;
        writeln!(out, "unknown           {}", report.unknown.len())?;
        let mut table = Table::new(vec!["freq", "outcome"]);
        for f in &report.disagree {
            table.push(vec![f.to_string(), "disagree".into()]);
        }
        for f in &report.unknown {
            table.push(vec![f.to_string(), "unknown".into()]);
        }
        if !report.disagree.is_empty() || !report.unknown.is_empty() {
            table.write(out)?;
        }
    }
    Ok(if report.disagree.is_empty() {
        Status::Ok
    } else {
        Status::VerificationFailed
    })
}
