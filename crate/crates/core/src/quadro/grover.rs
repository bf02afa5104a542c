use crate::error::{Error, Result};
use crate::simulator::{Circuit, Control, Gate};

/// `A`: `prep`, then `classifier` on the leading qubits, then a CNOT copying
/// `output_qubit` onto a fresh flag qubit appended last.
pub fn state_preparation(
    prep: &Circuit,
    classifier: &Circuit,
    output_qubit: usize,
) -> Result<Circuit> {
    let width = prep.num_qubits();
    if classifier.num_qubits() > width {
        return Err(Error::invalid(format!(
            "classifier spans {} qubits but the prepared register has {width}",
            classifier.num_qubits()
        )));
    }
    if output_qubit >= classifier.num_qubits() {
        return Err(Error::QubitOutOfRange {
            index: output_qubit,
            num_qubits: classifier.num_qubits(),
        });
    }
    let mut a = prep.widened(width + 1)?;
    a.append(&classifier.widened(width + 1)?)?;
    a.push(Gate::cnot(output_qubit, width))?;
    Ok(a)
}

/// `-1` on `|0...0>` of the whole register, identity elsewhere.
pub fn reflection_about_zero(num_qubits: usize) -> Result<Circuit> {
    let mut c = Circuit::new(num_qubits);
    let last = num_qubits
        .checked_sub(1)
        .ok_or_else(|| Error::invalid("empty register"))?;
    let controls = (0..last).map(Control::zero).collect();
    c.push(Gate::x(last))?;
    c.push(Gate::mcz(controls, last))?;
    c.push(Gate::x(last))?;
    Ok(c)
}

/// `A S0 A^dagger S_bad`, with `S_bad = -Z` on the flag. Equal to the
/// usual `-A S0 A^dagger S_good`; the sign is kept because it becomes a
/// relative phase once the operator is controlled.
pub fn grover_operator(a: &Circuit, flag: usize) -> Result<Circuit> {
    let n = a.num_qubits();
    if flag >= n {
        return Err(Error::QubitOutOfRange {
            index: flag,
            num_qubits: n,
        });
    }
    let mut q = Circuit::new(n);
    q.push(Gate::x(flag))?;
    q.push(Gate::z(flag))?;
    q.push(Gate::x(flag))?;
    q.append(&a.inverse())?;
    q.append(&reflection_about_zero(n)?)?;
    q.append(a)?;
    Ok(q)
}

/// Grover operator for `prep` followed by `classifier`, flag last.
pub fn build_grover_operator(
    prep: &Circuit,
    classifier: &Circuit,
    output_qubit: usize,
) -> Result<Circuit> {
    let a = state_preparation(prep, classifier, output_qubit)?;
    let flag = a.num_qubits() - 1;
    grover_operator(&a, flag)
}
