#include "entropyne/matrix_io.hpp"

#include "entropyne/errors.hpp"
#include "entropyne/grid.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace entropyne {

namespace {

double parse_real(std::string_view s, std::string_view token) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw Error(ErrorKind::ParseError, "bad complex entry '" + std::string(token) + "'");
    }
    return v;
}

}  // namespace

Complex parse_complex(std::string_view token) {
    if (token.empty()) throw Error(ErrorKind::ParseError, "empty complex entry");
    if (token.back() != 'j') return {parse_real(token, token), 0.0};
    const std::string_view body = token.substr(0, token.size() - 1);
    // The imaginary part starts at the last sign that is not a leading sign
    // and not part of an exponent.
    std::size_t split = std::string_view::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string_view::npos) return {0.0, parse_real(body, token)};
    return {parse_real(body.substr(0, split), token), parse_real(body.substr(split), token)};
}

std::string format_complex(Complex z) {
    std::string s = format_double(z.real());
    const std::string im = format_double(z.imag());
    s += (im.front() == '-' ? "" : "+") + im + "j";
    return s;
}

ComplexMatrix read_matrix(std::istream& in) {
    long long d = 0;
    if (!(in >> d) || d < 1) throw Error(ErrorKind::ParseError, "matrix file must start with a positive dimension");
    ComplexMatrix m(d, d);
    for (long long i = 0; i < d; ++i) {
        for (long long j = 0; j < d; ++j) {
            std::string tok;
            if (!(in >> tok)) throw Error(ErrorKind::ParseError, "matrix file ended early");
            m(i, j) = parse_complex(tok);
        }
    }
    std::string extra;
    if (in >> extra) throw Error(ErrorKind::ParseError, "trailing data after matrix entries");
    return m;
}

ComplexMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open matrix file '" + path + "'");
    return read_matrix(in);
}

void write_matrix(std::ostream& out, const ComplexMatrix& m) {
    out << m.rows() << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << format_complex(m(i, j));
        }
        out << '\n';
    }
}

}  // namespace entropyne
