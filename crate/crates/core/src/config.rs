/// Caps on the exponential enumeration kernels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest `n` for qubit colour-assignment enumeration (`2^n` steps).
    pub max_qubits: usize,
    /// Largest `d^n` for qudit enumeration.
    pub max_qudit_states: u64,
    /// Largest generator count for group enumeration (`d^g` elements).
    pub max_generators: usize,
    /// Largest Hilbert-space dimension accepted by the statevector oracle.
    pub max_statevector_dim: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_qubits: 40,
            max_qudit_states: 1 << 27,
            max_generators: 30,
            max_statevector_dim: 4096,
        }
    }
}

/// Environment variable consulted for the default worker count.
pub const THREADS_ENV: &str = "SLDKIT_THREADS";
