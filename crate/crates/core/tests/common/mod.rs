//! Reference implementations used as test oracles. Nothing here calls into
//! the library: matrices are plain row-major `Vec<f64>`.

#![allow(dead_code)]

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations,
/// ascending.
pub fn jacobi_eigenvalues(n: usize, m: &[f64]) -> Vec<f64> {
    assert_eq!(m.len(), n * n);
    let mut a = m.to_vec();
    let scale: f64 = a.iter().map(|v| v * v).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

fn digits(mut flat: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = flat % dims[k];
        flat /= dims[k];
    }
    out
}

fn undigits(ds: &[usize], dims: &[usize]) -> usize {
    ds.iter().zip(dims).fold(0, |acc, (d, n)| acc * n + d)
}

/// Partial transpose by decoding every row and column into digits and
/// swapping the selected ones.
pub fn naive_partial_transpose(dims: &[usize], m: &[f64], factors: &[usize]) -> Vec<f64> {
    let order: usize = dims.iter().product();
    let mut out = vec![0.0; order * order];
    for r in 0..order {
        for c in 0..order {
            let mut rd = digits(r, dims);
            let mut cd = digits(c, dims);
            for &f in factors {
                std::mem::swap(&mut rd[f], &mut cd[f]);
            }
            out[undigits(&rd, dims) * order + undigits(&cd, dims)] = m[r * order + c];
        }
    }
    out
}

/// Mixed support vectors in lexicographic order (0-based components),
/// with their swapped partners.
pub fn support_pairs(n: usize, d_a: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let total = d_a.pow(n as u32);
    let mut out = Vec::new();
    for flat in 0..total {
        let v = digits(flat, &vec![d_a; n]);
        let mut values = v.clone();
        values.sort_unstable();
        values.dedup();
        if values.len() != 2 || v[0] != values[0] {
            continue;
        }
        let w: Vec<usize> = v.iter().map(|&c| if c == values[0] { values[1] } else { values[0] }).collect();
        out.push((v, w));
    }
    out
}

/// The mixture `ρ(q)` with the canonical payloads, written entry by entry
/// from the definition. Factor order A1..An, B1..Bn.
pub fn family_matrix(n: usize, d_a: usize, d_b: usize, q: f64) -> Vec<f64> {
    let m = d_b.pow(n as u32);
    let mut a = vec![0.0; m * m];
    for k in 0..m {
        a[k * m + k] = 1.0 / (d_a * m) as f64;
    }
    let b = vec![1.0 / (2 * m) as f64; m * m];
    family_matrix_with(n, d_a, d_b, q, &a, &b)
}

/// Same construction with arbitrary row-major payloads of order `d_B^n`.
pub fn family_matrix_with(n: usize, d_a: usize, d_b: usize, q: f64, a: &[f64], b: &[f64]) -> Vec<f64> {
    let da_n = d_a.pow(n as u32);
    let db_n = d_b.pow(n as u32);
    let order = da_n * db_n;
    let patterns = (1usize << (n - 1)) - 1;
    let pairs = d_a * (d_a - 1) / 2;
    let x = q / (patterns * pairs) as f64;
    let p = 1.0 - q;

    let a_digits = vec![d_a; n];
    let diag: Vec<usize> = (0..d_a).map(|i| undigits(&vec![i; n], &a_digits)).collect();
    let supports: Vec<[usize; 2]> = support_pairs(n, d_a)
        .into_iter()
        .map(|(v, w)| [undigits(&v, &a_digits), undigits(&w, &a_digits)])
        .collect();

    let mut m = vec![0.0; order * order];
    for ra in 0..da_n {
        for ca in 0..da_n {
            let weight_a = if diag.contains(&ra) && diag.contains(&ca) { p } else { 0.0 };
            let weight_b = x * supports.iter().filter(|s| s.contains(&ra) && s.contains(&ca)).count() as f64;
            for rb in 0..db_n {
                for cb in 0..db_n {
                    let k = rb * db_n + cb;
                    m[(ra * db_n + rb) * order + ca * db_n + cb] = weight_a * a[k] + weight_b * b[k];
                }
            }
        }
    }
    m
}

/// 0-based factor positions transposed by a cut of 1-based parties.
pub fn cut_factors(n: usize, parties: &[usize]) -> Vec<usize> {
    let mut f: Vec<usize> = parties.iter().flat_map(|&k| [k - 1, n + k - 1]).collect();
    f.sort_unstable();
    f
}

pub fn family_dims(n: usize, d_a: usize, d_b: usize) -> Vec<usize> {
    let mut dims = vec![d_a; n];
    dims.extend(std::iter::repeat_n(d_b, n));
    dims
}

/// Minimum eigenvalues of `ρ(q)` and of its transposes over every cut
/// excluding party 1, cuts in ascending bitmask order.
pub fn brute_force_minima(n: usize, d_a: usize, d_b: usize, q: f64) -> (f64, Vec<f64>) {
    minima_of(n, d_a, d_b, &family_matrix(n, d_a, d_b, q))
}

/// Minimum eigenvalues of a family-shaped matrix and of its cut transposes.
pub fn minima_of(n: usize, d_a: usize, d_b: usize, m: &[f64]) -> (f64, Vec<f64>) {
    let order = (d_a * d_b).pow(n as u32);
    let dims = family_dims(n, d_a, d_b);
    let rho_min = jacobi_eigenvalues(order, m)[0];
    let cuts = (1u64..1 << (n - 1))
        .map(|mask| {
            let parties: Vec<usize> = (0..n - 1).filter(|k| mask >> k & 1 == 1).map(|k| k + 2).collect();
            let pt = naive_partial_transpose(&dims, m, &cut_factors(n, &parties));
            jacobi_eigenvalues(order, &pt)[0]
        })
        .collect();
    (rho_min, cuts)
}
