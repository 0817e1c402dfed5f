#include "ftqlab/css_code.hpp"
#include "ftqlab/kernels.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ftqlab {

Syndrome Syndrome::zeros(size_t nbits) {
    Syndrome s;
    s.nbits = nbits;
    s.bits.assign(words_for(nbits == 0 ? 1 : nbits), 0);
    return s;
}

bool Syndrome::any() const { return !row_is_zero(bits); }

std::string Syndrome::str() const {
    std::string s(nbits, '0');
    for (size_t i = 0; i < nbits; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

static void check_tail_clear(const BitRow& r, uint32_t n, const char* what) {
    size_t w = words_for(n);
    if (r.size() != w) throw std::invalid_argument(std::string(what) + ": bad row length");
    if (n % 64) {
        uint64_t mask = ~((1ull << (n % 64)) - 1);
        if (r.back() & mask) throw std::invalid_argument(std::string(what) + ": bits beyond n set");
    }
}

CssCode CssCode::from_parts(uint32_t n,
                            std::vector<BitRow> hx, std::vector<BitRow> hz,
                            std::vector<PauliOp> lx, std::vector<PauliOp> lz) {
    if (n == 0) throw std::invalid_argument("CssCode: n must be positive");
    if (lx.size() != lz.size()) throw std::invalid_argument("CssCode: logical X/Z count mismatch");
    if (lx.empty()) throw std::invalid_argument("CssCode: need at least one logical qubit");

    CssCode c;
    c.n = n;
    c.k = static_cast<uint32_t>(lx.size());
    c.h_x = std::move(hx);
    c.h_z = std::move(hz);
    c.logical_x = std::move(lx);
    c.logical_z = std::move(lz);

    for (auto& r : c.h_x) check_tail_clear(r, n, "CssCode h_x");
    for (auto& r : c.h_z) check_tail_clear(r, n, "CssCode h_z");
    for (auto& rx : c.h_x)
        for (auto& rz : c.h_z)
            if (row_and_parity(rx, rz))
                throw std::invalid_argument("CssCode: X and Z generators do not commute");

    for (uint32_t i = 0; i < c.k; ++i) {
        const PauliOp& x = c.logical_x[i];
        const PauliOp& z = c.logical_z[i];
        if (x.n != n || z.n != n) throw std::invalid_argument("CssCode: logical size mismatch");
        if (!row_is_zero(x.z) || x.phase != 0)
            throw std::invalid_argument("CssCode: logical_x must be pure X-type");
        if (!row_is_zero(z.x) || z.phase != 0)
            throw std::invalid_argument("CssCode: logical_z must be pure Z-type");
        for (auto& rz : c.h_z)
            if (row_and_parity(x.x, rz))
                throw std::invalid_argument("CssCode: logical_x conflicts with a Z generator");
        for (auto& rx : c.h_x)
            if (row_and_parity(z.z, rx))
                throw std::invalid_argument("CssCode: logical_z conflicts with an X generator");
    }
    for (uint32_t i = 0; i < c.k; ++i)
        for (uint32_t j = 0; j < c.k; ++j) {
            uint32_t want = (i == j) ? 1u : 0u;
            if (row_and_parity(c.logical_x[i].x, c.logical_z[j].z) != want)
                throw std::invalid_argument("CssCode: logical pairing violated");
        }

    c.basis_x = gf2_row_basis(c.h_x, n);
    c.basis_z = gf2_row_basis(c.h_z, n);
    size_t rx = c.basis_x.size(), rz = c.basis_z.size();
    if (rx + rz + 2ull * c.k != static_cast<size_t>(n) + c.k)
        throw std::invalid_argument("CssCode: rank(h_x)+rank(h_z)+2k != n+k");
    return c;
}

PauliOp CssCode::generator(size_t i) const {
    PauliOp p = PauliOp::identity(n);
    if (i < h_x.size()) p.x = h_x[i];
    else if (i < num_generators()) p.z = h_z[i - h_x.size()];
    else throw std::out_of_range("CssCode::generator: index out of range");
    return p;
}

Syndrome CssCode::syndrome(const PauliOp& e) const {
    if (e.n != n) throw std::invalid_argument("CssCode::syndrome: size mismatch");
    Syndrome s = Syndrome::zeros(num_generators());
    for (size_t i = 0; i < h_x.size(); ++i)
        if (row_and_parity(h_x[i], e.z)) s.set(i, true);
    for (size_t i = 0; i < h_z.size(); ++i)
        if (row_and_parity(h_z[i], e.x)) s.set(h_x.size() + i, true);
    return s;
}

static size_t coset_min_weight(const BitRow& err, const std::vector<BitRow>& basis) {
    if (basis.size() > 20)
        throw std::runtime_error("reduced_weight: stabilizer sector too large to enumerate");
    BitRow cur = err;
    size_t best = row_weight(cur);
    uint32_t r = static_cast<uint32_t>(basis.size());
    uint64_t total = 1ull << r;
    for (uint64_t g = 1; g < total; ++g) {
        // Gray order: step g flips basis row ctz(g).
        row_xor(cur, basis[__builtin_ctzll(g)]);
        best = std::min(best, row_weight(cur));
        if (best == 0) break;
    }
    return best;
}

size_t CssCode::reduced_weight(const PauliOp& e) const {
    if (e.n != n) throw std::invalid_argument("CssCode::reduced_weight: size mismatch");
    size_t wx = coset_min_weight(e.x, basis_x);
    size_t wz = coset_min_weight(e.z, basis_z);
    return std::max(wx, wz);
}

uint32_t CssCode::distance() const {
    size_t best = n + 1;
    // X-type logicals are caught by Z-type generators and vice versa;
    // each sector counts only when its catching side exists
    for (uint32_t i = 0; i < k; ++i) {
        if (!h_z.empty()) best = std::min(best, coset_min_weight(logical_x[i].x, basis_x));
        if (!h_x.empty()) best = std::min(best, coset_min_weight(logical_z[i].z, basis_z));
    }
    if (best > n) throw std::logic_error("CssCode::distance: no generators at all");
    return uint32_t(best);
}

std::string CssCode::logical_class(const PauliOp& e) const {
    if (syndrome(e).any()) return "detectable";
    std::string s;
    for (uint32_t i = 0; i < k; ++i) {
        bool xs = row_and_parity(e.x, logical_z[i].z) != 0;
        bool zs = row_and_parity(e.z, logical_x[i].x) != 0;
        s += xs ? (zs ? 'Y' : 'X') : (zs ? 'Z' : 'I');
    }
    return s;
}

static std::string row_text(const BitRow& r, uint32_t n) {
    std::string s(n, '0');
    for (uint32_t q = 0; q < n; ++q)
        if (get_bit(r, q)) s[q] = '1';
    return s;
}

std::string CssCode::to_text() const {
    std::ostringstream out;
    out << "n " << n << "\n";
    out << "k " << k << "\n";
    out << "[HX]\n";
    for (auto& r : h_x) out << row_text(r, n) << "\n";
    out << "[HZ]\n";
    for (auto& r : h_z) out << row_text(r, n) << "\n";
    out << "[LX]\n";
    for (auto& l : logical_x) out << row_text(l.x, n) << "\n";
    out << "[LZ]\n";
    for (auto& l : logical_z) out << row_text(l.z, n) << "\n";
    return out.str();
}

static BitRow parse_support_row(const std::string& line, uint32_t n, size_t lineno) {
    if (line.size() != n)
        throw std::invalid_argument("code file line " + std::to_string(lineno) +
                                    ": expected " + std::to_string(n) + " columns");
    BitRow r(words_for(n), 0);
    for (uint32_t q = 0; q < n; ++q) {
        if (line[q] == '1') set_bit(r, q, true);
        else if (line[q] != '0')
            throw std::invalid_argument("code file line " + std::to_string(lineno) +
                                        ": rows must be 0/1");
    }
    return r;
}

CssCode CssCode::parse_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    size_t lineno = 0;
    uint32_t n = 0, k = 0;
    bool have_n = false, have_k = false;
    int section = -1; // 0 HX, 1 HZ, 2 LX, 3 LZ
    std::vector<BitRow> hx, hz, lxr, lzr;

    while (std::getline(in, line)) {
        ++lineno;
        size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        size_t b = line.find_last_not_of(" \t\r");
        std::string t = line.substr(a, b - a + 1);
        if (t[0] == '#') continue;
        if (t == "[HX]") { section = 0; continue; }
        if (t == "[HZ]") { section = 1; continue; }
        if (t == "[LX]") { section = 2; continue; }
        if (t == "[LZ]") { section = 3; continue; }
        if (section < 0) {
            std::istringstream hs(t);
            std::string key;
            hs >> key;
            if (key == "n") { hs >> n; have_n = true; }
            else if (key == "k") { hs >> k; have_k = true; }
            else throw std::invalid_argument("code file line " + std::to_string(lineno) +
                                             ": unknown header '" + key + "'");
            if (!hs) throw std::invalid_argument("code file line " + std::to_string(lineno) +
                                                 ": bad header value");
            continue;
        }
        if (!have_n) throw std::invalid_argument("code file: rows before 'n' header");
        BitRow r = parse_support_row(t, n, lineno);
        if (section == 0) hx.push_back(r);
        else if (section == 1) hz.push_back(r);
        else if (section == 2) lxr.push_back(r);
        else lzr.push_back(r);
    }
    if (!have_n || !have_k) throw std::invalid_argument("code file: missing n or k header");
    if (lxr.size() != k || lzr.size() != k)
        throw std::invalid_argument("code file: logical row count disagrees with k");
    std::vector<PauliOp> lx, lz;
    for (auto& r : lxr) { PauliOp p = PauliOp::identity(n); p.x = r; lx.push_back(p); }
    for (auto& r : lzr) { PauliOp p = PauliOp::identity(n); p.z = r; lz.push_back(p); }
    return from_parts(n, std::move(hx), std::move(hz), std::move(lx), std::move(lz));
}

CssCode load_code_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open code file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return CssCode::parse_text(ss.str());
}

void save_code_file(const CssCode& code, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write code file: " + path);
    f << code.to_text();
}

} // namespace ftqlab
