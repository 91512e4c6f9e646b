// Reference Shapiro-Wilk routine used only as a test oracle.
//
// Follows the control flow of the AS 181 / R94 Fortran routine: single-precision
// era percent points (AS 111), AS 66 normal tail areas, and W evaluated as a
// squared correlation of range-scaled data. None of this code is shared with
// the library implementation it checks.

#![allow(dead_code)]

fn poly(c: &[f64], x: f64) -> f64 {
    let mut acc = 0.0;
    for &coef in c.iter().rev() {
        acc = acc * x + coef;
    }
    acc
}

/// AS 66 normal tail area.
pub fn alnorm(x: f64, upper: bool) -> f64 {
    let (mut z, mut up) = (x, upper);
    if z < 0.0 {
        up = !up;
        z = -z;
    }
    if !(z <= 7.0 || (up && z <= 38.0)) {
        return if up { 0.0 } else { 1.0 };
    }
    let y = 0.5 * z * z;
    let tail = if z <= 1.28 {
        0.5 - z
            * (0.398942280444
                - 0.399903438504 * y
                    / (y + 5.75885480458 - 29.8213557808 / (y + 2.62433121679 + 48.6959930692 / (y + 5.92885724438))))
    } else {
        0.398942280385 * (-y).exp()
            / (z - 3.8052e-8
                + 1.00000615302
                    / (z + 3.98064794e-4
                        + 1.98615381364
                            / (z - 0.151679116635
                                + 5.29330324926 / (z + 4.8385912808 - 15.1508972451 / (z + 0.742380924027 + 30.789933034 / (z + 3.99019417011))))))
    };
    if up { tail } else { 1.0 - tail }
}

/// AS 111 percent point of the standard normal (about 7 significant digits).
pub fn ppnd(p: f64) -> f64 {
    let q = p - 0.5;
    if q.abs() <= 0.42 {
        let r = q * q;
        return q * (((-25.44106049637 * r + 41.39119773534) * r - 18.61500062529) * r + 2.50662823884)
            / ((((3.13082909833 * r - 21.06224101826) * r + 23.08336743743) * r - 8.47351093090) * r + 1.0);
    }
    let mut r = if q > 0.0 { 1.0 - p } else { p };
    r = (-r.ln()).sqrt();
    let v = (((2.32121276858 * r + 4.85014127135) * r - 2.29796479134) * r - 2.78718931138)
        / ((1.63706781897 * r + 3.54388924762) * r + 1.0);
    if q < 0.0 { -v } else { v }
}

/// Half-vector of coefficients, largest first, as stored by the Fortran routine.
pub fn half_coefficients(n: usize) -> Vec<f64> {
    let nn2 = n / 2;
    let mut a = vec![0.0; nn2];
    if n == 3 {
        a[0] = std::f64::consts::FRAC_1_SQRT_2;
        return a;
    }
    let c1 = [0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056];
    let c2 = [0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633];
    let an = n as f64;
    let an25 = an + 0.25;
    let mut m = vec![0.0; nn2];
    let mut summ2 = 0.0;
    for (i, mi) in m.iter_mut().enumerate() {
        *mi = ppnd((i as f64 + 1.0 - 0.375) / an25);
        summ2 += *mi * *mi;
    }
    summ2 *= 2.0;
    let ssumm2 = summ2.sqrt();
    let rsn = 1.0 / an.sqrt();
    let a1 = poly(&c1, rsn) - m[0] / ssumm2;
    let (start, fac) = if n > 5 {
        let a2 = -m[1] / ssumm2 + poly(&c2, rsn);
        let fac = ((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1]) / (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2)).sqrt();
        a[1] = a2;
        (2, fac)
    } else {
        let fac = ((summ2 - 2.0 * m[0] * m[0]) / (1.0 - 2.0 * a1 * a1)).sqrt();
        (1, fac)
    };
    a[0] = a1;
    for i in start..nn2 {
        a[i] = -m[i] / fac;
    }
    a
}

/// Returns (W, p-value) for the given sample.
pub fn swilk(sample: &[f64]) -> (f64, f64) {
    let mut x = sample.to_vec();
    x.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = x.len();
    assert!(n >= 3);
    let a = half_coefficients(n);
    let an = n as f64;

    let range = x[n - 1] - x[0];
    assert!(range > 1e-19);

    // Full antisymmetric coefficient for order statistic i (0-based).
    let coef = |i: usize| -> f64 {
        let j = n - 1 - i;
        if i < j {
            -a[i]
        } else if i > j {
            a[j]
        } else {
            0.0
        }
    };

    let sx: f64 = x.iter().map(|v| v / range).sum::<f64>() / an;
    let sa: f64 = (0..n).map(coef).sum::<f64>() / an;
    let (mut ssa, mut ssx, mut sax) = (0.0, 0.0, 0.0);
    for (i, xi) in x.iter().enumerate() {
        let asa = coef(i) - sa;
        let xsx = xi / range - sx;
        ssa += asa * asa;
        ssx += xsx * xsx;
        sax += asa * xsx;
    }
    let ssassx = (ssa * ssx).sqrt();
    let w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx);
    let w = 1.0 - w1;

    if n == 3 {
        let pi6 = 6.0 / std::f64::consts::PI;
        let stqr = (0.75f64).sqrt().asin();
        let p = (pi6 * (w.sqrt().asin() - stqr)).max(0.0);
        return (w, p);
    }

    let y = w1.ln();
    let xx = an.ln();
    if n <= 11 {
        let gamma = poly(&[-2.273, 0.459], an);
        if y >= gamma {
            return (w, 1e-99);
        }
        let y = -(gamma - y).ln();
        let m = poly(&[0.5440, -0.39978, 0.025054, -6.714e-4], an);
        let s = poly(&[1.3822, -0.77857, 0.062767, -0.0020322], an).exp();
        (w, alnorm((y - m) / s, true))
    } else {
        let m = poly(&[-1.5861, -0.31082, -0.083751, 0.0038915], xx);
        let s = poly(&[-0.4803, -0.082676, 0.0030302], xx).exp();
        (w, alnorm((y - m) / s, true))
    }
}
