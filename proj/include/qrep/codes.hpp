#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qrep {

/// Measurement basis for a block of transversal single-qubit readouts.
/// Z-basis outcomes are corrupted by bit flips and checked against the
/// Z-type generators; X-basis outcomes by phase flips against the X-type
/// generators. Bit conventions: |0> -> 0, |1> -> 1; |+> -> 0, |-> -> 1.
enum class Basis { X, Z };

enum class DecoderKind {
    Trivial,            // single qubit, nothing to correct
    Majority,           // repetition: majority vote (Z); bare parity (X)
    Lookup,             // syndrome -> minimum-weight coset representative
    RowColumnMajority,  // square lattice: majority over row/column parities
    Unsupported,        // analytic parameters only, no decoder shipped
};

/// One CSS block code. Check rows and logical supports are bit masks over
/// the physical qubits (bit i = qubit i).
struct CssCodeSpec {
    std::string name;
    int n = 1;         // physical qubits per block
    int k = 1;         // encoded qubits
    int t = 0;         // guaranteed correctable weight, distance = 2t + 1
    bool single_error_type = false;  // protects only Z-basis readout
    bool decodable = true;           // check matrices and decoder are shipped
    DecoderKind decoder_kind = DecoderKind::Trivial;
    std::vector<std::uint32_t> h_x;  // X-type generator supports
    std::vector<std::uint32_t> h_z;  // Z-type generator supports
    std::uint32_t logical_x_support = 1;
    std::uint32_t logical_z_support = 1;
    int grid = 0;  // side length for RowColumnMajority

    // syndrome -> correction tables (Lookup decoder)
    std::vector<std::uint32_t> lut_x, lut_z;
    std::vector<std::uint8_t> lut_x_ok, lut_z_ok;

    const std::vector<std::uint32_t>& checks(Basis b) const {
        return b == Basis::Z ? h_z : h_x;
    }
    std::uint32_t logical_mask(Basis b) const {
        return b == Basis::Z ? logical_z_support : logical_x_support;
    }
    /// Per-basis correction guarantee: weight <= correctable(b) decodes
    /// exactly. The repetition codes protect only the Z readout.
    int correctable(Basis b) const {
        return (single_error_type && b == Basis::X) ? 0 : t;
    }
};

/// Names in canonical (reporting) order.
const std::vector<std::string>& registered_code_names();

/// Look up a code by registry name. All specs are built once, validated
/// (generator orthogonality, logical commutation, full decode tables) and
/// immutable after that. Throws std::invalid_argument listing the
/// registered names on a miss.
const CssCodeSpec& build_code(std::string_view name);

struct DecodeResult {
    std::vector<int> logical_bits;  // decoded logical word, length k
    int correction_weight = 0;      // weight of the inferred correction
    bool failed = false;            // no correction found within distance
};

/// Decode a block of transversal readouts given as a 0/1 vector of length n.
DecodeResult decode_block(const CssCodeSpec& code, Basis basis,
                          const std::vector<int>& outputs);

/// Hot-path variant used by the sampler: outcomes packed into a word
/// (bit i = outcome of qubit i), single logical bit out.
struct WordDecode {
    int logical = 0;
    int correction_weight = 0;
    bool failed = false;
};
WordDecode decode_word(const CssCodeSpec& code, Basis basis, std::uint32_t word);

struct ResourceEstimate {
    int total = 0;    // physical qubits per station
    int memory = 0;   // storage for the two block halves held at a station
    int ancilla = 0;  // workspace for encoded connection + verification
};
ResourceEstimate resource_estimate(const CssCodeSpec& code);

/// Measured stabilizer eigenvalues (+1/-1 signs) for one encoded block.
struct StabilizerFrame {
    std::vector<int> x_eigen;  // X-type generators
    std::vector<int> z_eigen;  // Z-type generators
};

/// Eigenvalue bookkeeping for a transversal CNOT (control -> target):
/// control' = (x1, z1*z2), target' = (x1*x2, z2), componentwise sign
/// products. Applying the update twice restores both frames.
std::pair<StabilizerFrame, StabilizerFrame> stabilizer_cnot_update(
    const StabilizerFrame& control, const StabilizerFrame& target);

}  // namespace qrep
