#include "qrep/codes.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace qrep {
namespace {

int parity32(std::uint32_t v) { return std::popcount(v) & 1; }

std::uint32_t syndrome_of(const std::vector<std::uint32_t>& checks,
                          std::uint32_t err) {
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < checks.size(); ++i)
        s |= static_cast<std::uint32_t>(parity32(checks[i] & err)) << i;
    return s;
}

// next subset of same popcount (Gosper's hack), for enumerating patterns
// in increasing weight order without touching weight-0
std::uint32_t next_same_weight(std::uint32_t v) {
    std::uint32_t c = v & (0u - v);
    std::uint32_t r = v + c;
    return (((r ^ v) >> 2) / c) | r;
}

// Fill syndrome -> lowest-weight-correction table. Every code registered
// with a Lookup decoder has 2^(#checks) syndromes all reachable by weight
// <= t patterns (perfect for its error model); anything unfilled is a
// registry bug, not a runtime condition.
void build_lut(const std::vector<std::uint32_t>& checks, int n, int t,
               std::vector<std::uint32_t>& lut, std::vector<std::uint8_t>& ok) {
    const std::size_t size = std::size_t{1} << checks.size();
    lut.assign(size, 0);
    ok.assign(size, 0);
    ok[0] = 1;
    const std::uint32_t limit = std::uint32_t{1} << n;
    for (int w = 1; w <= t; ++w) {
        std::uint32_t e = (std::uint32_t{1} << w) - 1;
        while (e < limit) {
            std::uint32_t s = syndrome_of(checks, e);
            if (!ok[s]) {
                lut[s] = e;
                ok[s] = 1;
            }
            if (w == n) break;
            e = next_same_weight(e);
        }
    }
    for (std::size_t s = 0; s < size; ++s)
        if (!ok[s])
            throw std::logic_error("decode table has unreachable syndrome");
}

// Parity checks of the length-23 perfect binary code in systematic form
// [I | B]: row i of B holds the remainder of x^(11+i) modulo the degree-11
// generator polynomial 0xC75 (bit d = coefficient of x^d).
std::vector<std::uint32_t> golay_checks() {
    const std::uint32_t gen = 0xC75;
    std::vector<std::uint32_t> rows(11, 0);
    for (int i = 0; i < 11; ++i) rows[i] |= std::uint32_t{1} << i;  // I part
    std::uint32_t rem = 1;
    for (int e = 1; e <= 22; ++e) {
        rem <<= 1;
        if (rem & (1u << 11)) rem ^= gen;
        if (e >= 11)
            for (int i = 0; i < 11; ++i)
                if (rem & (1u << i)) rows[i] |= std::uint32_t{1} << e;
    }
    return rows;
}

void check_even_overlaps(const CssCodeSpec& c) {
    for (auto x : c.h_x)
        for (auto z : c.h_z)
            if (parity32(x & z))
                throw std::logic_error(c.name + ": generators anticommute");
    for (auto x : c.h_x)
        if (parity32(x & c.logical_z_support))
            throw std::logic_error(c.name + ": logical Z not preserved");
    for (auto z : c.h_z)
        if (parity32(z & c.logical_x_support))
            throw std::logic_error(c.name + ": logical X not preserved");
    if (c.k == 1 && !parity32(c.logical_x_support & c.logical_z_support))
        throw std::logic_error(c.name + ": logical pair must anticommute");
}

void validate(CssCodeSpec& c) {
    const std::uint32_t mask =
        c.n == 32 ? 0xFFFFFFFFu : ((std::uint32_t{1} << c.n) - 1);
    for (auto row : c.h_x)
        if (row & ~mask) throw std::logic_error(c.name + ": X row out of range");
    for (auto row : c.h_z)
        if (row & ~mask) throw std::logic_error(c.name + ": Z row out of range");
    if (c.decodable) check_even_overlaps(c);
    if (c.decoder_kind == DecoderKind::Lookup) {
        build_lut(c.h_z, c.n, c.t, c.lut_z, c.lut_z_ok);
        build_lut(c.h_x, c.n, c.t, c.lut_x, c.lut_x_ok);
    }
}

std::vector<CssCodeSpec> build_registry() {
    std::vector<CssCodeSpec> reg;

    {
        CssCodeSpec c;
        c.name = "none";
        c.n = 1, c.k = 1, c.t = 0;
        c.decoder_kind = DecoderKind::Trivial;
        c.logical_x_support = c.logical_z_support = 1;
        reg.push_back(std::move(c));
    }
    for (int n : {3, 5}) {
        CssCodeSpec c;
        c.name = "repetition-" + std::to_string(n);
        c.n = n, c.k = 1, c.t = (n - 1) / 2;
        c.single_error_type = true;  // distance 1 against phase flips
        c.decoder_kind = DecoderKind::Majority;
        for (int i = 0; i + 1 < n; ++i)
            c.h_z.push_back(std::uint32_t{3} << i);
        c.logical_x_support = c.logical_z_support =
            (std::uint32_t{1} << n) - 1;
        reg.push_back(std::move(c));
    }
    {
        CssCodeSpec c;
        c.name = "hamming-7";
        c.n = 7, c.k = 1, c.t = 1;
        c.decoder_kind = DecoderKind::Lookup;
        c.h_x = c.h_z = {0x55, 0x66, 0x78};  // columns 1..7 in binary
        c.logical_x_support = c.logical_z_support = 0x7F;
        reg.push_back(std::move(c));
    }
    {
        // 5x5 lattice, qubit index r*5 + c. X-type generators compare
        // adjacent column pairs, Z-type adjacent row pairs; the decoder
        // takes majority votes over the 5 column (row) parities.
        CssCodeSpec c;
        c.name = "bacon-shor-25";
        c.n = 25, c.k = 1, c.t = 2;
        c.grid = 5;
        c.decoder_kind = DecoderKind::RowColumnMajority;
        const std::uint32_t col0 = 0x108421;  // bits 0,5,10,15,20
        const std::uint32_t row0 = 0x1F;      // bits 0..4
        for (int j = 0; j + 1 < 5; ++j) {
            c.h_x.push_back((col0 << j) | (col0 << (j + 1)));
            c.h_z.push_back((row0 << (5 * j)) | (row0 << (5 * (j + 1))));
        }
        c.logical_x_support = col0;  // one full column
        c.logical_z_support = row0;  // one full row
        reg.push_back(std::move(c));
    }
    {
        CssCodeSpec c;
        c.name = "golay-23";
        c.n = 23, c.k = 1, c.t = 3;
        c.decoder_kind = DecoderKind::Lookup;
        c.h_x = c.h_z = golay_checks();
        c.logical_x_support = c.logical_z_support = 0x7FFFFF;
        reg.push_back(std::move(c));
    }
    {
        CssCodeSpec c;
        c.name = "bch-127";
        c.n = 127, c.k = 29, c.t = 7;
        c.decodable = false;
        c.decoder_kind = DecoderKind::Unsupported;
        reg.push_back(std::move(c));
    }
    {
        CssCodeSpec c;
        c.name = "qr-103";
        c.n = 103, c.k = 1, c.t = 9;
        c.decodable = false;
        c.decoder_kind = DecoderKind::Unsupported;
        reg.push_back(std::move(c));
    }

    for (auto& c : reg) validate(c);
    return reg;
}

const std::vector<CssCodeSpec>& registry() {
    static const std::vector<CssCodeSpec> reg = build_registry();
    return reg;
}

}  // namespace

const std::vector<std::string>& registered_code_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& c : registry()) v.push_back(c.name);
        return v;
    }();
    return names;
}

const CssCodeSpec& build_code(std::string_view name) {
    for (const auto& c : registry())
        if (c.name == name) return c;
    std::ostringstream msg;
    msg << "unknown code '" << name << "'; registered:";
    for (const auto& n : registered_code_names()) msg << ' ' << n;
    throw std::invalid_argument(msg.str());
}

WordDecode decode_word(const CssCodeSpec& code, Basis basis,
                       std::uint32_t word) {
    WordDecode r;
    switch (code.decoder_kind) {
        case DecoderKind::Trivial:
            r.logical = static_cast<int>(word & 1);
            return r;
        case DecoderKind::Majority: {
            if (basis == Basis::X) {
                // no X-type checks: the logical is the bare parity
                r.logical = parity32(word & code.logical_x_support);
                return r;
            }
            const int ones = std::popcount(word);
            r.logical = ones * 2 > code.n;
            r.correction_weight = r.logical ? code.n - ones : ones;
            return r;
        }
        case DecoderKind::Lookup: {
            const auto& checks = code.checks(basis);
            const auto& lut = basis == Basis::Z ? code.lut_z : code.lut_x;
            const std::uint32_t corr = lut[syndrome_of(checks, word)];
            r.correction_weight = std::popcount(corr);
            r.logical = parity32((word ^ corr) & code.logical_mask(basis));
            return r;
        }
        case DecoderKind::RowColumnMajority: {
            // The logical Z value is the parity of any single row (rows
            // agree up to gauge), so take all 5 row parities and majority
            // vote: an odd number of bit flips in a row flips that row's
            // vote, and only 3+ corrupted rows flip the outcome. X basis
            // mirrors with column parities.
            const int g = code.grid;
            const std::uint32_t line0 =
                basis == Basis::Z ? 0x1Fu : 0x108421u;
            int votes = 0, minority = 0;
            for (int j = 0; j < g; ++j) {
                const std::uint32_t line =
                    basis == Basis::Z ? line0 << (g * j) : line0 << j;
                votes += parity32(word & line);
            }
            r.logical = votes * 2 > g;
            minority = r.logical ? g - votes : votes;
            r.correction_weight = minority;
            return r;
        }
        case DecoderKind::Unsupported:
            break;
    }
    throw std::runtime_error(code.name + ": no decoder is shipped");
}

DecodeResult decode_block(const CssCodeSpec& code, Basis basis,
                          const std::vector<int>& outputs) {
    if (static_cast<int>(outputs.size()) != code.n)
        throw std::invalid_argument(code.name + ": expected " +
                                    std::to_string(code.n) + " outcomes, got " +
                                    std::to_string(outputs.size()));
    std::uint32_t word = 0;
    for (int i = 0; i < code.n; ++i) {
        if (outputs[i] != 0 && outputs[i] != 1)
            throw std::invalid_argument(code.name + ": outcomes must be 0/1");
        word |= static_cast<std::uint32_t>(outputs[i]) << i;
    }
    const WordDecode w = decode_word(code, basis, word);
    DecodeResult r;
    r.logical_bits.assign(code.k, 0);
    r.logical_bits[0] = w.logical;  // every registered decodable code has k=1
    r.correction_weight = w.correction_weight;
    r.failed = w.failed;
    return r;
}

ResourceEstimate resource_estimate(const CssCodeSpec& code) {
    ResourceEstimate r;
    if (code.n == 1) {
        // bare pairs still need a two-qubit workspace for connection
        r.memory = 2, r.ancilla = 2, r.total = 4;
        return r;
    }
    r.memory = 2 * code.n;   // two half-pair blocks held while connecting
    r.ancilla = 4 * code.n;  // encoded ancilla + verification workspace
    r.total = r.memory + r.ancilla;
    return r;
}

std::pair<StabilizerFrame, StabilizerFrame> stabilizer_cnot_update(
    const StabilizerFrame& control, const StabilizerFrame& target) {
    if (control.x_eigen.size() != target.x_eigen.size() ||
        control.z_eigen.size() != target.z_eigen.size())
        throw std::invalid_argument("stabilizer frames differ in shape");
    auto check = [](const std::vector<int>& v) {
        for (int s : v)
            if (s != 1 && s != -1)
                throw std::invalid_argument("eigenvalues must be +1/-1");
    };
    check(control.x_eigen), check(control.z_eigen);
    check(target.x_eigen), check(target.z_eigen);

    StabilizerFrame c2 = control, t2 = target;
    // X-type products propagate control -> target, Z-type target -> control
    for (std::size_t i = 0; i < target.x_eigen.size(); ++i)
        t2.x_eigen[i] = control.x_eigen[i] * target.x_eigen[i];
    for (std::size_t i = 0; i < control.z_eigen.size(); ++i)
        c2.z_eigen[i] = control.z_eigen[i] * target.z_eigen[i];
    return {std::move(c2), std::move(t2)};
}

}  // namespace qrep
