use std::f64::consts::PI;

use super::{BenchInstance, FunctionId};

pub const WEIERSTRASS_TERMS: usize = 12;
pub const GALLAGHER_PEAKS: usize = 101;
const KATSUURA_TERMS: i32 = 32;

/// Diagonal of the BBOB conditioning matrix `Λ^α`: `α^(i / (2(D−1)))`.
pub fn conditioning(alpha: f64, dim: usize) -> Vec<f64> {
    (0..dim)
        .map(|i| alpha.powf(0.5 * i as f64 / (dim - 1) as f64))
        .collect()
}

fn scale(v: &mut [f64], factors: &[f64]) {
    for (x, s) in v.iter_mut().zip(factors) {
        *x *= s;
    }
}

fn rastrigin(z: &[f64]) -> f64 {
    let d = z.len() as f64;
    10.0 * (d - z.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>())
}

pub(super) fn raw_value(inst: &BenchInstance, x: &[f64]) -> f64 {
    let d = inst.dim;
    let df = d as f64;
    match inst.function_id {
        FunctionId::F1 => inst.rotated_offset(x).iter().map(|v| v * v).sum(),

        // The slope rises towards the origin side of x_opt along every axis
        // and is flat beyond it.
        FunctionId::F5 => x
            .iter()
            .zip(&inst.x_opt)
            .enumerate()
            .map(|(i, (xi, oi))| {
                let sign = if *oi < 0.0 { -1.0 } else { 1.0 };
                let weight = 10f64.powf(i as f64 / (df - 1.0));
                weight * (sign * (oi - xi)).max(0.0)
            })
            .sum(),

        FunctionId::F7 => {
            let mut zh = inst.rotated_offset(x);
            scale(&mut zh, &conditioning(10.0, d));
            let rounded = zh.iter().map(|v| {
                if v.abs() > 0.5 {
                    (0.5 + v).floor()
                } else {
                    (0.5 + 10.0 * v).floor() / 10.0
                }
            });
            let ellipsoid: f64 = rounded
                .enumerate()
                .map(|(i, z)| 10f64.powf(2.0 * i as f64 / (df - 1.0)) * z * z)
                .sum();
            0.1 * (zh[0].abs() / 1e4).max(ellipsoid)
        }

        FunctionId::F8 => {
            let c = (df.sqrt() / 8.0).max(1.0);
            let z: Vec<f64> = inst
                .rotated_offset(x)
                .iter()
                .map(|v| c * v + 1.0)
                .collect();
            z.windows(2)
                .map(|w| 100.0 * (w[0] * w[0] - w[1]).powi(2) + (w[0] - 1.0).powi(2))
                .sum()
        }

        FunctionId::F12 => {
            let z = inst.rotated_offset(x);
            z[0] * z[0] + 1e6 * z[1..].iter().map(|v| v * v).sum::<f64>()
        }

        FunctionId::F15 => {
            let mut z = inst.rotated_offset(x);
            scale(&mut z, &conditioning(10.0, d));
            rastrigin(&z) + z.iter().map(|v| v * v).sum::<f64>()
        }

        FunctionId::F16 => {
            let mut z = inst.rotated_offset(x);
            scale(&mut z, &conditioning(0.01, d));
            let f0: f64 = (0..WEIERSTRASS_TERMS)
                .map(|k| 0.5f64.powi(k as i32) * (PI * 3f64.powi(k as i32)).cos())
                .sum();
            let series: f64 = z
                .iter()
                .map(|zi| {
                    (0..WEIERSTRASS_TERMS)
                        .map(|k| {
                            let k = k as i32;
                            0.5f64.powi(k) * (2.0 * PI * 3f64.powi(k) * (zi + 0.5)).cos()
                        })
                        .sum::<f64>()
                })
                .sum();
            10.0 * (series / df - f0).powi(3)
        }

        FunctionId::F21 => {
            let best = inst
                .peaks
                .iter()
                .map(|p| {
                    let diff: Vec<f64> = x.iter().zip(&p.location).map(|(a, b)| a - b).collect();
                    let r = inst.rotate(&diff);
                    let q: f64 = r.iter().zip(&p.curvature).map(|(v, c)| c * v * v).sum();
                    p.weight * (-q / (2.0 * df)).exp()
                })
                .fold(f64::NEG_INFINITY, f64::max);
            (10.0 - best).powi(2)
        }

        FunctionId::F23 => {
            let mut z = inst.rotated_offset(x);
            scale(&mut z, &conditioning(100.0, d));
            let exponent = 10.0 / df.powf(1.2);
            let product: f64 = z
                .iter()
                .enumerate()
                .map(|(i, zi)| {
                    let s: f64 = (1..=KATSUURA_TERMS)
                        .map(|j| {
                            let p = 2f64.powi(j) * zi;
                            (p - p.round()).abs() / 2f64.powi(j)
                        })
                        .sum();
                    (1.0 + (i + 1) as f64 * s).powf(exponent)
                })
                .product();
            10.0 / (df * df) * (product - 1.0)
        }

        FunctionId::F24 => {
            let mu0 = 2.5;
            let depth = 1.0;
            let s = 1.0 - 1.0 / (2.0 * (df + 20.0).sqrt() - 8.2);
            let mu1 = -((mu0 * mu0 - depth) / s).sqrt();
            // offset mirrored so that x_opt sits in the μ0 funnel
            let v: Vec<f64> = x
                .iter()
                .zip(&inst.x_opt)
                .map(|(xi, oi)| {
                    let sign = if *oi < 0.0 { -1.0 } else { 1.0 };
                    2.0 * sign * (xi - oi)
                })
                .collect();
            let near: f64 = v.iter().map(|t| t * t).sum();
            let far: f64 = depth * df + s * v.iter().map(|t| (t + mu0 - mu1).powi(2)).sum::<f64>();
            let mut z = inst.rotate(&v);
            scale(&mut z, &conditioning(100.0, d));
            near.min(far) + rastrigin(&z)
        }
    }
}
