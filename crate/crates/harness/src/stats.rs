//! Sample statistics for the experiment summaries: mean, standard deviation,
//! median, and the two-sided Wilcoxon rank-sum (Mann-Whitney) test.

pub fn mean_sd(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

pub fn median(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

/// Scientific notation in the tables' style: three mean digits and a
/// two-digit zero-padded exponent, e.g. `5.025E-02`.
pub fn sci(value: f64, digits: usize) -> String {
    if value == 0.0 {
        return format!("{:.*}E+00", digits, 0.0);
    }
    let exponent = value.abs().log10().floor() as i32;
    let mantissa = value / 10f64.powi(exponent);
    // Rounding the mantissa can push it to 10.0; renormalise.
    let rounded = format!("{:.*}", digits, mantissa);
    if rounded.starts_with("10") || rounded.starts_with("-10") {
        let mantissa = mantissa / 10.0;
        return format!(
            "{:.*}E{}{:02}",
            digits,
            mantissa,
            sign(exponent + 1),
            (exponent + 1).abs()
        );
    }
    format!("{rounded}E{}{:02}", sign(exponent), exponent.abs())
}

fn sign(e: i32) -> char {
    if e < 0 {
        '-'
    } else {
        '+'
    }
}

/// The paper-style `mean(SD)` cell.
pub fn format_mean_sd(mean: f64, sd: f64) -> String {
    format!("{}({})", sci(mean, 3), sci(sd, 1))
}

/// Two-sided Wilcoxon rank-sum / Mann-Whitney test. Exact enumeration of the
/// U distribution when either sample is below ten and the data carry no ties;
/// otherwise the normal approximation with tie and continuity corrections.
/// Identical samples give p = 1.
pub fn rank_sum_test(sample_a: &[f64], sample_b: &[f64]) -> f64 {
    let n1 = sample_a.len();
    let n2 = sample_b.len();
    assert!(n1 >= 1 && n2 >= 1, "rank-sum test needs non-empty samples");

    let mut combined: Vec<(f64, usize)> = sample_a
        .iter()
        .map(|&v| (v, 0))
        .chain(sample_b.iter().map(|&v| (v, 1)))
        .collect();
    combined.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(std::cmp::Ordering::Equal));

    if combined.windows(2).all(|w| w[0].0 == w[1].0) {
        return 1.0;
    }

    // Midranks for ties, tracking tie-group sizes for the variance correction.
    let total = n1 + n2;
    let mut ranks = vec![0.0; total];
    let mut tie_sizes: Vec<usize> = Vec::new();
    let mut i = 0;
    while i < total {
        let mut j = i + 1;
        while j < total && combined[j].0 == combined[i].0 {
            j += 1;
        }
        let rank = (i + j + 1) as f64 / 2.0;
        for r in ranks.iter_mut().take(j).skip(i) {
            *r = rank;
        }
        if j - i > 1 {
            tie_sizes.push(j - i);
        }
        i = j;
    }

    let r1: f64 = ranks
        .iter()
        .zip(&combined)
        .filter(|(_, (_, group))| *group == 0)
        .map(|(r, _)| *r)
        .sum();
    let u1 = r1 - (n1 * (n1 + 1)) as f64 / 2.0;
    let u2 = (n1 * n2) as f64 - u1;

    if n1.min(n2) < 10 && tie_sizes.is_empty() {
        return exact_two_sided(n1, n2, u1.min(u2));
    }

    let mu = (n1 * n2) as f64 / 2.0;
    let nf = total as f64;
    let tie_term: f64 = tie_sizes
        .iter()
        .map(|&t| (t * t * t - t) as f64)
        .sum::<f64>()
        / (nf * (nf - 1.0));
    let sigma2 = (n1 * n2) as f64 / 12.0 * (nf + 1.0 - tie_term);
    if sigma2 <= 0.0 {
        return 1.0;
    }
    let z = ((u1 - mu).abs() - 0.5).max(0.0) / sigma2.sqrt();
    (libm::erfc(z / std::f64::consts::SQRT_2)).min(1.0)
}

/// Exact two-sided p from the null distribution of U, via the classic
/// recurrence f(n1, n2, u) = f(n1-1, n2, u - n2) + f(n1, n2-1, u).
fn exact_two_sided(n1: usize, n2: usize, u_min: f64) -> f64 {
    let mut memo = std::collections::HashMap::new();
    let threshold = (u_min.floor() as i64).max(0);
    let mut cumulative = 0.0;
    for u in 0..=threshold {
        cumulative += count_u(n1, n2, u, &mut memo);
    }
    let total = binomial(n1 + n2, n1);
    (2.0 * cumulative / total).min(1.0)
}

fn count_u(
    n1: usize,
    n2: usize,
    u: i64,
    memo: &mut std::collections::HashMap<(usize, usize, i64), f64>,
) -> f64 {
    if u < 0 {
        return 0.0;
    }
    if n1 == 0 || n2 == 0 {
        return if u == 0 { 1.0 } else { 0.0 };
    }
    if let Some(&v) = memo.get(&(n1, n2, u)) {
        return v;
    }
    let value = count_u(n1 - 1, n2, u - n2 as i64, memo) + count_u(n1, n2 - 1, u, memo);
    memo.insert((n1, n2, u), value);
    value
}

fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    let mut result = 1.0f64;
    for i in 0..k {
        result = result * (n - i) as f64 / (i + 1) as f64;
    }
    result
}
