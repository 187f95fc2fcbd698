//! Explicit commuting-operator fixtures for dims 2, 3 and 4.
//!
//! These are the published matrices, stored verbatim, partitioned into their
//! commuting sets: the Pauli triple, the eight spin-1 operators over
//! ω = e^{2πi/3}, and the fifteen spin-3/2 operators.

use num_complex::Complex64;

use crate::numerics::ComplexMatrix;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn omega() -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0)
}

/// Pauli matrices grouped as singleton commuting sets: {σz}, {σx}, {σy}.
/// The diagonal set comes first so the shared outcome alphabet reads off it.
pub fn pauli_sets() -> Vec<Vec<ComplexMatrix>> {
    let sz = ComplexMatrix::diagonal(&[1.0, -1.0]);
    let sx = ComplexMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0]);
    let sy = ComplexMatrix::from_entries(
        2,
        vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)],
    );
    vec![vec![sz], vec![sx], vec![sy]]
}

/// The eight spin-1 operators, partitioned into four commuting pairs.
pub fn spin1_sets() -> Vec<Vec<ComplexMatrix>> {
    let w = omega();
    let w2 = w * w;
    let i = c(0.0, 1.0);
    let s = 1.0 / 2f64.sqrt();

    let a1 = ComplexMatrix::diagonal(&[(1.5f64).sqrt(), 0.0, -(1.5f64).sqrt()]);
    let a2 = ComplexMatrix::diagonal(&[s, -2.0 * s, s]);

    let zero = c(0.0, 0.0);
    let a3 = ComplexMatrix::from_entries(
        3,
        vec![
            zero, -i * w, i * w2, //
            i * w2, zero, -i * w, //
            -i * w, i * w2, zero,
        ],
    )
    .scale_re(s);
    let a4 = ComplexMatrix::from_entries(
        3,
        vec![
            zero, -w, -w2, //
            -w2, zero, -w, //
            -w, -w2, zero,
        ],
    )
    .scale_re(s);
    let a5 = ComplexMatrix::from_entries(
        3,
        vec![
            zero, -i, i * w2, //
            i, zero, -i * w2, //
            -i * w, i * w, zero,
        ],
    )
    .scale_re(s);
    let a6 = ComplexMatrix::from_entries(
        3,
        vec![
            zero,
            c(-1.0, 0.0),
            -w2, //
            c(-1.0, 0.0),
            zero,
            -w2, //
            -w,
            -w,
            zero,
        ],
    )
    .scale_re(s);
    let a7 = ComplexMatrix::from_entries(
        3,
        vec![
            zero,
            -i * w2,
            i * w2, //
            i * w,
            zero,
            -i, //
            -i * w,
            i,
            zero,
        ],
    )
    .scale_re(s);
    let a8 = ComplexMatrix::from_entries(
        3,
        vec![
            zero,
            -w2,
            -w2, //
            -w,
            zero,
            c(-1.0, 0.0), //
            -w,
            c(-1.0, 0.0),
            zero,
        ],
    )
    .scale_re(s);

    vec![vec![a1, a2], vec![a3, a4], vec![a5, a6], vec![a7, a8]]
}

/// The standard spin-1 inter-basis unitaries U2, U3, U4 over ω = e^{2πi/3}.
pub fn spin1_unitaries() -> [ComplexMatrix; 3] {
    let w = omega();
    let w2 = w * w;
    let one = c(1.0, 0.0);
    let s = 1.0 / 3f64.sqrt();
    let u2 = ComplexMatrix::from_entries(
        3,
        vec![one, one, one, one, w, w2, one, w2, w],
    )
    .scale_re(s);
    let u3 = ComplexMatrix::from_entries(
        3,
        vec![one, w2, one, one, one, w2, one, w, w],
    )
    .scale_re(s);
    let u4 = ComplexMatrix::from_entries(
        3,
        vec![one, w, one, one, w2, w2, one, one, w],
    )
    .scale_re(s);
    [u2, u3, u4]
}

/// The fifteen spin-3/2 operators, partitioned into five commuting triples.
pub fn spin32_sets() -> Vec<Vec<ComplexMatrix>> {
    let r5 = 1.0 / 5f64.sqrt();
    let b1 = ComplexMatrix::diagonal(&[3.0, 1.0, -1.0, -3.0]).scale_re(r5);
    let b2 = ComplexMatrix::diagonal(&[1.0, -1.0, -1.0, 1.0]);
    let b3 = ComplexMatrix::diagonal(&[1.0, -3.0, 3.0, -1.0]).scale_re(r5);

    let b4 = ComplexMatrix::from_real(
        4,
        &[
            0.0, 1.0, 2.0, 0.0, //
            1.0, 0.0, 0.0, 2.0, //
            2.0, 0.0, 0.0, 1.0, //
            0.0, 2.0, 1.0, 0.0,
        ],
    )
    .scale_re(r5);
    let b5 = ComplexMatrix::from_real(
        4,
        &[
            0.0, 0.0, 0.0, 1.0, //
            0.0, 0.0, 1.0, 0.0, //
            0.0, 1.0, 0.0, 0.0, //
            1.0, 0.0, 0.0, 0.0,
        ],
    );
    let b6 = ComplexMatrix::from_real(
        4,
        &[
            0.0, 2.0, -1.0, 0.0, //
            2.0, 0.0, 0.0, -1.0, //
            -1.0, 0.0, 0.0, 2.0, //
            0.0, -1.0, 2.0, 0.0,
        ],
    )
    .scale_re(r5);

    let im = |v: f64| c(0.0, v);
    let re = |v: f64| c(v, 0.0);
    let b7 = ComplexMatrix::from_entries(
        4,
        vec![
            re(0.0),
            im(-1.0),
            im(-2.0),
            re(0.0),
            im(1.0),
            re(0.0),
            re(0.0),
            im(-2.0),
            im(2.0),
            re(0.0),
            re(0.0),
            im(-1.0),
            re(0.0),
            im(2.0),
            im(1.0),
            re(0.0),
        ],
    )
    .scale_re(r5);
    let b8 = ComplexMatrix::from_real(
        4,
        &[
            0.0, 0.0, 0.0, -1.0, //
            0.0, 0.0, 1.0, 0.0, //
            0.0, 1.0, 0.0, 0.0, //
            -1.0, 0.0, 0.0, 0.0,
        ],
    );
    let b9 = ComplexMatrix::from_entries(
        4,
        vec![
            re(0.0),
            im(-2.0),
            im(1.0),
            re(0.0),
            im(2.0),
            re(0.0),
            re(0.0),
            im(1.0),
            im(-1.0),
            re(0.0),
            re(0.0),
            im(-2.0),
            re(0.0),
            im(-1.0),
            im(2.0),
            re(0.0),
        ],
    )
    .scale_re(r5);

    let b10 = ComplexMatrix::from_entries(
        4,
        vec![
            re(0.0),
            im(-1.0),
            re(2.0),
            re(0.0),
            im(1.0),
            re(0.0),
            re(0.0),
            re(-2.0),
            re(2.0),
            re(0.0),
            re(0.0),
            im(1.0),
            re(0.0),
            re(-2.0),
            im(-1.0),
            re(0.0),
        ],
    )
    .scale_re(r5);
    let b11 = ComplexMatrix::from_entries(
        4,
        vec![
            re(0.0),
            re(0.0),
            re(0.0),
            im(1.0),
            re(0.0),
            re(0.0),
            im(1.0),
            re(0.0),
            re(0.0),
            im(-1.0),
            re(0.0),
            re(0.0),
            im(-1.0),
            re(0.0),
            re(0.0),
            re(0.0),
        ],
    );
    let b12 = ComplexMatrix::from_entries(
        4,
        vec![
            re(0.0),
            im(-2.0),
            re(-1.0),
            re(0.0),
            im(2.0),
            re(0.0),
            re(0.0),
            re(1.0),
            re(-1.0),
            re(0.0),
            re(0.0),
            im(2.0),
            re(0.0),
            re(1.0),
            im(-2.0),
            re(0.0),
        ],
    )
    .scale_re(r5);

    let b13 = ComplexMatrix::from_entries(
        4,
        vec![
            re(0.0),
            re(1.0),
            im(-2.0),
            re(0.0),
            re(1.0),
            re(0.0),
            re(0.0),
            im(2.0),
            im(2.0),
            re(0.0),
            re(0.0),
            re(-1.0),
            re(0.0),
            im(-2.0),
            re(-1.0),
            re(0.0),
        ],
    )
    .scale_re(r5);
    let b14 = ComplexMatrix::from_entries(
        4,
        vec![
            re(0.0),
            re(0.0),
            re(0.0),
            im(1.0),
            re(0.0),
            re(0.0),
            im(-1.0),
            re(0.0),
            re(0.0),
            im(1.0),
            re(0.0),
            re(0.0),
            im(-1.0),
            re(0.0),
            re(0.0),
            re(0.0),
        ],
    );
    let b15 = ComplexMatrix::from_entries(
        4,
        vec![
            re(0.0),
            re(2.0),
            im(1.0),
            re(0.0),
            re(2.0),
            re(0.0),
            re(0.0),
            im(-1.0),
            im(-1.0),
            re(0.0),
            re(0.0),
            re(-2.0),
            re(0.0),
            im(1.0),
            re(-2.0),
            re(0.0),
        ],
    )
    .scale_re(r5);

    vec![
        vec![b1, b2, b3],
        vec![b4, b5, b6],
        vec![b7, b8, b9],
        vec![b10, b11, b12],
        vec![b13, b14, b15],
    ]
}
