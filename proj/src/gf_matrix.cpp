#include "sepred/gf_matrix.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <map>
#include <sstream>

#include "sepred/combinatorics.hpp"
#include "sepred/errors.hpp"

namespace sepred {

namespace {

std::size_t word_count(std::size_t cols) { return (cols + 63) / 64; }

}  // namespace

GFMatrix::GFMatrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), packed_(field_->is_binary()),
      words_(word_count(cols)) {
    if (packed_)
        bits_.assign(rows_ * words_, 0);
    else
        data_.assign(rows_ * cols_, 0);
}

GFMatrix GFMatrix::from_rows(FieldPtr field, const std::vector<std::vector<Elem>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    GFMatrix m(std::move(field), 0, cols);
    for (const auto& r : rows) m.append_row(r);
    return m;
}

GFMatrix GFMatrix::identity(FieldPtr field, std::size_t n) {
    GFMatrix m(std::move(field), n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

Elem GFMatrix::at(std::size_t r, std::size_t c) const {
    if (packed_) return static_cast<Elem>((bits_[r * words_ + c / 64] >> (c % 64)) & 1u);
    return data_[r * cols_ + c];
}

void GFMatrix::set(std::size_t r, std::size_t c, Elem v) {
    if (r >= rows_ || c >= cols_) throw InvalidArgument("matrix index out of range");
    if (v >= field_->order()) throw InvalidArgument("element index out of range for " + field_->name());
    if (packed_) {
        auto& w = bits_[r * words_ + c / 64];
        const std::uint64_t bit = std::uint64_t{1} << (c % 64);
        w = v ? (w | bit) : (w & ~bit);
    } else {
        data_[r * cols_ + c] = v;
    }
}

std::vector<Elem> GFMatrix::row(std::size_t r) const {
    std::vector<Elem> out(cols_);
    for (std::size_t c = 0; c < cols_; ++c) out[c] = at(r, c);
    return out;
}

void GFMatrix::append_row(std::span<const Elem> values) {
    if (values.size() != cols_) throw InvalidArgument("row length does not match column count");
    const Elem q = field_->order();
    for (Elem v : values)
        if (v >= q) throw InvalidArgument("element index out of range for " + field_->name());
    if (packed_) {
        bits_.resize(bits_.size() + words_, 0);
        std::uint64_t* w = bits_.data() + rows_ * words_;
        for (std::size_t c = 0; c < cols_; ++c)
            if (values[c]) w[c / 64] |= std::uint64_t{1} << (c % 64);
    } else {
        data_.insert(data_.end(), values.begin(), values.end());
    }
    ++rows_;
}

void GFMatrix::append_rows(const GFMatrix& other) {
    if (other.cols_ != cols_ || !(*other.field_ == *field_))
        throw InvalidArgument("cannot stack matrices of different shape or field");
    if (packed_)
        bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
    else
        data_.insert(data_.end(), other.data_.begin(), other.data_.end());
    rows_ += other.rows_;
}

bool GFMatrix::row_is_zero(std::size_t r) const {
    if (packed_) {
        for (std::size_t w = 0; w < words_; ++w)
            if (bits_[r * words_ + w]) return false;
        return true;
    }
    for (std::size_t c = 0; c < cols_; ++c)
        if (data_[r * cols_ + c]) return false;
    return true;
}

std::vector<std::uint64_t> GFMatrix::support_mask(std::size_t r) const {
    if (packed_) return {bits_.begin() + r * words_, bits_.begin() + (r + 1) * words_};
    std::vector<std::uint64_t> mask(words_, 0);
    for (std::size_t c = 0; c < cols_; ++c)
        if (data_[r * cols_ + c]) mask[c / 64] |= std::uint64_t{1} << (c % 64);
    return mask;
}

GFMatrix GFMatrix::select_rows(std::span<const std::size_t> indices) const {
    GFMatrix out(field_, 0, cols_);
    for (std::size_t r : indices) {
        if (r >= rows_) throw InvalidArgument("row index out of range");
        if (packed_)
            out.bits_.insert(out.bits_.end(), bits_.begin() + r * words_, bits_.begin() + (r + 1) * words_);
        else
            out.data_.insert(out.data_.end(), data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
        ++out.rows_;
    }
    return out;
}

GFMatrix GFMatrix::select_columns(std::span<const std::uint32_t> indices) const {
    GFMatrix out(field_, rows_, indices.size());
    for (std::size_t j = 0; j < indices.size(); ++j)
        if (indices[j] >= cols_) throw InvalidArgument("column index out of range");
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t j = 0; j < indices.size(); ++j) {
            const Elem v = at(r, indices[j]);
            if (v) out.set(r, j, v);
        }
    return out;
}

bool GFMatrix::operator==(const GFMatrix& o) const {
    return *field_ == *o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && bits_ == o.bits_ && data_ == o.data_;
}

std::string GFMatrix::to_string() const {
    std::ostringstream os;
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << at(r, c);
        os << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------

RowBasis::RowBasis(FieldPtr field, std::size_t cols)
    : field_(std::move(field)), cols_(cols), packed_(field_->is_binary()), words_(word_count(cols)) {}

void RowBasis::reduce(std::vector<Elem>& v) const {
    const Field& f = *field_;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Elem c = v[pivots_[i]];
        if (c == 0) continue;
        const auto& b = rows_[i];
        for (std::size_t j = pivots_[i]; j < cols_; ++j)
            if (b[j]) v[j] = f.sub(v[j], f.mul(c, b[j]));
    }
}

void RowBasis::reduce_packed(std::vector<std::uint64_t>& w) const {
    for (std::size_t i = 0; i < packed_rows_.size(); ++i) {
        const std::size_t p = pivots_[i];
        if ((w[p / 64] >> (p % 64)) & 1u) {
            const auto& b = packed_rows_[i];
            for (std::size_t k = p / 64; k < words_; ++k) w[k] ^= b[k];
        }
    }
}

bool RowBasis::insert_packed(const std::uint64_t* words) {
    std::vector<std::uint64_t> w(words, words + words_);
    reduce_packed(w);
    for (std::size_t k = 0; k < words_; ++k) {
        if (w[k]) {
            pivots_.push_back(k * 64 + static_cast<std::size_t>(std::countr_zero(w[k])));
            packed_rows_.push_back(std::move(w));
            return true;
        }
    }
    return false;
}

bool RowBasis::insert(std::span<const Elem> v) {
    if (v.size() != cols_) throw InvalidArgument("vector length does not match basis width");
    if (packed_) {
        std::vector<std::uint64_t> w(words_, 0);
        for (std::size_t c = 0; c < cols_; ++c)
            if (v[c]) w[c / 64] |= std::uint64_t{1} << (c % 64);
        return insert_packed(w.data());
    }
    std::vector<Elem> x(v.begin(), v.end());
    reduce(x);
    for (std::size_t c = 0; c < cols_; ++c) {
        if (x[c]) {
            const Elem s = field_->inv(x[c]);
            for (std::size_t j = c; j < cols_; ++j) x[j] = field_->mul(x[j], s);
            pivots_.push_back(c);
            rows_.push_back(std::move(x));
            return true;
        }
    }
    return false;
}

bool RowBasis::insert_row(const GFMatrix& m, std::size_t r) {
    if (m.cols() != cols_) throw InvalidArgument("row length does not match basis width");
    if (packed_ && m.packed()) return insert_packed(m.row_words(r));
    return insert(m.row(r));
}

bool RowBasis::contains(std::span<const Elem> v) const {
    if (v.size() != cols_) throw InvalidArgument("vector length does not match basis width");
    if (packed_) {
        std::vector<std::uint64_t> w(words_, 0);
        for (std::size_t c = 0; c < cols_; ++c)
            if (v[c]) w[c / 64] |= std::uint64_t{1} << (c % 64);
        reduce_packed(w);
        return std::all_of(w.begin(), w.end(), [](std::uint64_t x) { return x == 0; });
    }
    std::vector<Elem> x(v.begin(), v.end());
    reduce(x);
    return std::all_of(x.begin(), x.end(), [](Elem e) { return e == 0; });
}

// ---------------------------------------------------------------------------

std::size_t rank(const GFMatrix& m) {
    RowBasis basis(m.field(), m.cols());
    const std::size_t cap = std::min(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows() && basis.rank() < cap; ++r) basis.insert_row(m, r);
    return basis.rank();
}

RrefResult rref(const GFMatrix& m) {
    const Field& f = *m.field();
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::vector<std::vector<Elem>> a(rows);
    for (std::size_t r = 0; r < rows; ++r) a[r] = m.row(r);

    std::vector<std::size_t> pivots;
    std::size_t lead = 0;
    for (std::size_t c = 0; c < cols && lead < rows; ++c) {
        std::size_t sel = lead;
        while (sel < rows && a[sel][c] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(a[sel], a[lead]);
        const Elem s = f.inv(a[lead][c]);
        for (std::size_t j = c; j < cols; ++j) a[lead][j] = f.mul(a[lead][j], s);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == lead || a[r][c] == 0) continue;
            const Elem factor = a[r][c];
            for (std::size_t j = c; j < cols; ++j)
                if (a[lead][j]) a[r][j] = f.sub(a[r][j], f.mul(factor, a[lead][j]));
        }
        pivots.push_back(c);
        ++lead;
    }
    GFMatrix out(m.field(), 0, cols);
    for (const auto& r : a) out.append_row(r);
    return {std::move(out), std::move(pivots)};
}

GFMatrix null_space(const GFMatrix& m) {
    const Field& f = *m.field();
    const auto [reduced, pivots] = rref(m);
    const std::size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t p : pivots) is_pivot[p] = true;
    GFMatrix basis(m.field(), 0, cols);
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Elem> v(cols, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(reduced.at(i, free));
        basis.append_row(v);
    }
    return basis;
}

bool row_space_contains(const GFMatrix& m, std::span<const Elem> v) {
    RowBasis basis(m.field(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) basis.insert_row(m, r);
    return basis.contains(v);
}

HsResult extract_hs(const GFMatrix& m, std::span<const std::uint32_t> coordinates) {
    std::vector<bool> in_s(m.cols(), false);
    for (std::uint32_t c : coordinates) {
        if (c >= m.cols()) throw InvalidArgument("coordinate " + std::to_string(c) + " out of range");
        in_s[c] = true;
    }
    std::vector<std::uint32_t> keep_cols;
    for (std::uint32_t c = 0; c < m.cols(); ++c)
        if (!in_s[c]) keep_cols.push_back(c);
    std::vector<std::size_t> keep_rows;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        bool zero = true;
        for (std::uint32_t c : coordinates) zero = zero && m.at(r, c) == 0;
        if (zero) keep_rows.push_back(r);
    }
    return {m.select_rows(keep_rows).select_columns(keep_cols), keep_rows};
}

bool verify_orthogonal_array(const GFMatrix& m, std::size_t strength) {
    const std::uint64_t q = m.field()->order();
    std::uint64_t cells = 1;
    for (std::size_t i = 0; i < strength; ++i) cells *= q;
    if (strength > m.cols()) return false;
    if (m.rows() % cells != 0) return false;
    const std::uint64_t expected = m.rows() / cells;
    std::vector<std::uint64_t> counts(cells);
    bool ok = true;
    for_each_subset_colex(static_cast<std::uint32_t>(m.cols()), strength, [&](const Subset& cols) {
        if (!ok) return;
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            std::uint64_t idx = 0;
            for (std::size_t i = cols.size(); i-- > 0;) idx = idx * q + m.at(r, cols[i]);
            ++counts[idx];
        }
        ok = std::all_of(counts.begin(), counts.end(), [&](std::uint64_t c) { return c == expected; });
    });
    return ok;
}

GFMatrix vstack(const GFMatrix& top, const GFMatrix& bottom) {
    GFMatrix out = top;
    out.append_rows(bottom);
    return out;
}

void write_gfmat(std::ostream& out, const GFMatrix& m, const std::vector<std::string>& comments) {
    for (const auto& c : comments) out << "# " << c << '\n';
    out << "GFMAT " << m.field()->characteristic() << ' ' << m.field()->degree() << ' ' << m.rows() << ' '
        << m.cols() << '\n';
    std::string line;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        line.clear();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c) line += ' ';
            line += std::to_string(m.at(r, c));
        }
        line += '\n';
        out << line;
    }
}

GFMatrix read_gfmat(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    auto next_content = [&](std::string& out) {
        while (std::getline(in, out)) {
            ++lineno;
            const auto pos = out.find_first_not_of(" \t\r");
            if (pos == std::string::npos || out[pos] == '#') continue;
            return true;
        }
        return false;
    };
    if (!next_content(line)) throw ParseError("missing GFMAT header", lineno);
    std::istringstream header(line);
    std::string tag;
    long long p = 0, e = 0, m = 0, n = 0;
    if (!(header >> tag >> p >> e >> m >> n) || tag != "GFMAT" || p < 2 || e < 1 || m < 0 || n < 0)
        throw ParseError("bad GFMAT header '" + line + "'", lineno);
    FieldPtr field;
    try {
        field = Field::make(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(e));
    } catch (const Error& err) {
        throw ParseError(err.what(), lineno);
    }
    GFMatrix out(field, 0, static_cast<std::size_t>(n));
    std::vector<Elem> row(static_cast<std::size_t>(n));
    for (long long r = 0; r < m; ++r) {
        if (!next_content(line)) throw ParseError("expected " + std::to_string(m) + " rows", lineno);
        std::istringstream ls(line);
        for (long long c = 0; c < n; ++c) {
            long long v;
            if (!(ls >> v)) throw ParseError("row has fewer than " + std::to_string(n) + " entries", lineno);
            if (v < 0 || v >= static_cast<long long>(field->order()))
                throw ParseError("element " + std::to_string(v) + " outside GF(" + std::to_string(field->order()) + ")",
                                 lineno);
            row[static_cast<std::size_t>(c)] = static_cast<Elem>(v);
        }
        std::string extra;
        if (ls >> extra) throw ParseError("row has more than " + std::to_string(n) + " entries", lineno);
        out.append_row(row);
    }
    if (next_content(line)) throw ParseError("trailing content after matrix", lineno);
    return out;
}

GFMatrix read_gfmat_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path);
    return read_gfmat(in);
}

void write_gfmat_file(const std::string& path, const GFMatrix& m, const std::vector<std::string>& comments) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write " + path);
    write_gfmat(out, m, comments);
}

}  // namespace sepred
