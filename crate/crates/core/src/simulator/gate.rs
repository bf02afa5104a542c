use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Row-major 2x2 complex matrix.
pub type Mat2 = [[C64; 2]; 2];

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GateKind {
    X,
    H,
    Z,
    RY(f64),
    RZ(f64),
    /// `RZ(gamma) * RY(beta) * RZ(alpha)`: `alpha` acts first.
    Rot(f64, f64, f64),
    CNOT,
    CZ,
    MultiControlledX,
    MultiControlledZ,
    ControlledRY(f64),
}

/// A control qubit; `on_one == false` makes it fire on `|0>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Control {
    pub qubit: usize,
    pub on_one: bool,
}

impl Control {
    pub fn one(qubit: usize) -> Self {
        Control {
            qubit,
            on_one: true,
        }
    }

    pub fn zero(qubit: usize) -> Self {
        Control {
            qubit,
            on_one: false,
        }
    }
}

/// A single-qubit operation applied to every target, conditioned on all controls.
#[derive(Clone, Debug, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub targets: Vec<usize>,
    pub controls: Vec<Control>,
}

impl Gate {
    fn single(kind: GateKind, target: usize) -> Self {
        Gate {
            kind,
            targets: vec![target],
            controls: Vec::new(),
        }
    }

    pub fn x(q: usize) -> Self {
        Self::single(GateKind::X, q)
    }

    pub fn h(q: usize) -> Self {
        Self::single(GateKind::H, q)
    }

    pub fn z(q: usize) -> Self {
        Self::single(GateKind::Z, q)
    }

    pub fn ry(q: usize, theta: f64) -> Self {
        Self::single(GateKind::RY(theta), q)
    }

    pub fn rz(q: usize, theta: f64) -> Self {
        Self::single(GateKind::RZ(theta), q)
    }

    pub fn rot(q: usize, alpha: f64, beta: f64, gamma: f64) -> Self {
        Self::single(GateKind::Rot(alpha, beta, gamma), q)
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        Gate {
            kind: GateKind::CNOT,
            targets: vec![target],
            controls: vec![Control::one(control)],
        }
    }

    pub fn cz(control: usize, target: usize) -> Self {
        Gate {
            kind: GateKind::CZ,
            targets: vec![target],
            controls: vec![Control::one(control)],
        }
    }

    pub fn cry(control: usize, target: usize, theta: f64) -> Self {
        Gate {
            kind: GateKind::ControlledRY(theta),
            targets: vec![target],
            controls: vec![Control::one(control)],
        }
    }

    pub fn mcx(controls: Vec<Control>, targets: Vec<usize>) -> Self {
        Gate {
            kind: GateKind::MultiControlledX,
            targets,
            controls,
        }
    }

    pub fn mcz(controls: Vec<Control>, target: usize) -> Self {
        Gate {
            kind: GateKind::MultiControlledZ,
            targets: vec![target],
            controls,
        }
    }

    /// Adds controls to an arbitrary gate, renaming the kind where a
    /// controlled name exists.
    pub fn with_controls(mut self, extra: impl IntoIterator<Item = Control>) -> Self {
        self.controls.extend(extra);
        self.kind = match (self.kind, self.controls.len()) {
            (GateKind::X | GateKind::CNOT | GateKind::MultiControlledX, 0) => GateKind::X,
            (GateKind::X | GateKind::CNOT | GateKind::MultiControlledX, 1) => GateKind::CNOT,
            (GateKind::X | GateKind::CNOT | GateKind::MultiControlledX, _) => {
                GateKind::MultiControlledX
            }
            (GateKind::Z | GateKind::CZ | GateKind::MultiControlledZ, 0) => GateKind::Z,
            (GateKind::Z | GateKind::CZ | GateKind::MultiControlledZ, 1) => GateKind::CZ,
            (GateKind::Z | GateKind::CZ | GateKind::MultiControlledZ, _) => {
                GateKind::MultiControlledZ
            }
            (GateKind::RY(t) | GateKind::ControlledRY(t), n) if n > 0 => GateKind::ControlledRY(t),
            (kind, _) => kind,
        };
        self
    }

    pub fn qubits(&self) -> impl Iterator<Item = usize> + '_ {
        self.targets
            .iter()
            .copied()
            .chain(self.controls.iter().map(|c| c.qubit))
    }

    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        if self.targets.is_empty() {
            return Err(Error::invalid("gate has no target"));
        }
        let mut seen = vec![false; num_qubits];
        for q in self.qubits() {
            if q >= num_qubits {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    num_qubits,
                });
            }
            if std::mem::replace(&mut seen[q], true) {
                return Err(Error::OverlappingQubits(q));
            }
        }
        Ok(())
    }

    pub fn adjoint(&self) -> Gate {
        use GateKind::*;
        let kind = match self.kind {
            RY(t) => RY(-t),
            RZ(t) => RZ(-t),
            Rot(a, b, g) => Rot(-g, -b, -a),
            ControlledRY(t) => ControlledRY(-t),
            k => k,
        };
        Gate {
            kind,
            targets: self.targets.clone(),
            controls: self.controls.clone(),
        }
    }

    /// The operator applied to each target when the controls fire.
    pub fn matrix(&self) -> Mat2 {
        kind_matrix(self.kind)
    }
}

pub fn kind_matrix(kind: GateKind) -> Mat2 {
    use GateKind::*;
    match kind {
        X | CNOT | MultiControlledX => [[ZERO, ONE], [ONE, ZERO]],
        Z | CZ | MultiControlledZ => [[ONE, ZERO], [ZERO, -ONE]],
        H => {
            let h = C64::new(FRAC_1_SQRT_2, 0.0);
            [[h, h], [h, -h]]
        }
        RY(t) | ControlledRY(t) => ry_matrix(t),
        RZ(t) => rz_matrix(t),
        Rot(a, b, g) => matmul(&rz_matrix(g), &matmul(&ry_matrix(b), &rz_matrix(a))),
    }
}

pub fn ry_matrix(theta: f64) -> Mat2 {
    let (s, c) = (theta / 2.0).sin_cos();
    [
        [C64::new(c, 0.0), C64::new(-s, 0.0)],
        [C64::new(s, 0.0), C64::new(c, 0.0)],
    ]
}

pub fn rz_matrix(theta: f64) -> Mat2 {
    [
        [C64::from_polar(1.0, -theta / 2.0), ZERO],
        [ZERO, C64::from_polar(1.0, theta / 2.0)],
    ]
}

pub fn matmul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[ZERO; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn dagger(m: &Mat2) -> Mat2 {
    [
        [m[0][0].conj(), m[1][0].conj()],
        [m[0][1].conj(), m[1][1].conj()],
    ]
}
