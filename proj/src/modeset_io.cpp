#include "ncsphere/modeset_io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "ncsphere/errors.hpp"

namespace ncsphere {

namespace {

using json = nlohmann::json;

std::pair<int, int> line_col(const std::string& text, std::size_t offset)
{
    int line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

// Maps JSON pointers to the offset where each value starts. Input is already
// known to be valid JSON.
class PositionIndex {
public:
    explicit PositionIndex(const std::string& text) : t_(text) { value(""); }
    std::size_t at(const std::string& ptr) const
    {
        auto it = pos_.find(ptr);
        return it == pos_.end() ? 0 : it->second;
    }

private:
    void ws()
    {
        while (i_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[i_]))) ++i_;
    }
    std::string str()
    {
        std::string out;
        ++i_;
        while (i_ < t_.size() && t_[i_] != '"') {
            if (t_[i_] == '\\') ++i_;
            if (i_ < t_.size()) out += t_[i_++];
        }
        ++i_;
        return out;
    }
    void value(const std::string& ptr)
    {
        ws();
        pos_[ptr] = i_;
        if (i_ >= t_.size()) return;
        const char c = t_[i_];
        if (c == '{') {
            ++i_;
            for (;;) {
                ws();
                if (t_[i_] == '}') break;
                const std::string key = str();
                ws();
                ++i_; // ':'
                value(ptr + "/" + key);
                ws();
                if (t_[i_] == ',') ++i_;
            }
            ++i_;
        } else if (c == '[') {
            ++i_;
            for (int k = 0;; ++k) {
                ws();
                if (t_[i_] == ']') break;
                value(ptr + "/" + std::to_string(k));
                ws();
                if (t_[i_] == ',') ++i_;
            }
            ++i_;
        } else if (c == '"') {
            str();
        } else {
            while (i_ < t_.size() && std::string(",]} \t\r\n").find(t_[i_]) == std::string::npos) ++i_;
        }
    }

    const std::string& t_;
    std::size_t i_ = 0;
    std::map<std::string, std::size_t> pos_;
};

class Reader {
public:
    Reader(const std::string& text, const PositionIndex& idx) : text_(text), idx_(idx) {}

    [[noreturn]] void fail(const std::string& ptr, const std::string& msg) const
    {
        const auto [l, c] = line_col(text_, idx_.at(ptr));
        throw ParseError("modeset:" + std::to_string(l) + ":" + std::to_string(c) + ": " +
                             (ptr.empty() ? "/" : ptr) + ": " + msg,
                         l, c);
    }

    const json& field(const json& j, const std::string& ptr, const char* key) const
    {
        if (!j.is_object() || !j.contains(key)) fail(ptr, std::string("missing field '") + key + "'");
        return j.at(key);
    }

    double number(const json& j, const std::string& ptr) const
    {
        if (!j.is_number()) fail(ptr, "expected a number");
        return j.get<double>();
    }

    int integer(const json& j, const std::string& ptr) const
    {
        if (!j.is_number_integer()) fail(ptr, "expected an integer");
        return j.get<int>();
    }

    const json& array(const json& j, const std::string& ptr, std::size_t size) const
    {
        if (!j.is_array()) fail(ptr, "expected an array");
        if (j.size() != size) fail(ptr, "expected " + std::to_string(size) + " entries, found " + std::to_string(j.size()));
        return j;
    }

    AnalyticFn1D fn(const json& j, const std::string& ptr) const
    {
        if (!j.is_object()) fail(ptr, "expected a function object");
        const json& kind = field(j, ptr, "kind");
        if (!kind.is_string()) fail(ptr + "/kind", "expected a string");
        const std::string k = kind.get<std::string>();
        if (k == "zero") return AnalyticFn1D::zero();
        if (k == "trigpoly") {
            const std::string tp = ptr + "/terms";
            const json& terms = field(j, ptr, "terms");
            if (!terms.is_array()) fail(tp, "expected an array");
            TrigPoly p;
            for (std::size_t i = 0; i < terms.size(); ++i) {
                const std::string ip = tp + "/" + std::to_string(i);
                const json& t = array(terms[i], ip, 3);
                const int a = integer(t[0], ip + "/0");
                p = p + TrigPoly::monomial(a, 0, cplx(number(t[1], ip + "/1"), number(t[2], ip + "/2")));
            }
            return AnalyticFn1D::from_trig(p);
        }
        if (k == "legendre") {
            std::vector<std::tuple<int, int, double>> terms;
            auto check = [&](int l, int m, const std::string& p) {
                if (l < 0 || std::abs(m) > l) fail(p, "need l >= 0 and |m| <= l");
            };
            if (j.contains("terms")) {
                const std::string tp = ptr + "/terms";
                const json& ts = j.at("terms");
                if (!ts.is_array()) fail(tp, "expected an array");
                for (std::size_t i = 0; i < ts.size(); ++i) {
                    const std::string ip = tp + "/" + std::to_string(i);
                    const json& t = array(ts[i], ip, 3);
                    const int l = integer(t[0], ip + "/0"), m = integer(t[1], ip + "/1");
                    check(l, m, ip);
                    terms.emplace_back(l, m, number(t[2], ip + "/2"));
                }
            } else {
                const int l = integer(field(j, ptr, "l"), ptr + "/l");
                const int m = integer(field(j, ptr, "m"), ptr + "/m");
                check(l, m, ptr);
                terms.emplace_back(l, m, number(field(j, ptr, "coeff"), ptr + "/coeff"));
            }
            if (terms.empty()) return AnalyticFn1D::zero();
            return AnalyticFn1D::from_jet([terms](const CJet& x) {
                const CJet c = cos(x), s = sin(x);
                CJet r(0.0);
                for (const auto& [l, m, coeff] : terms)
                    r += cplx(coeff * harmonic_norm(l, m)) * assoc_legendre(l, m, c, s);
                return r;
            });
        }
        fail(ptr + "/kind", "unknown kind '" + k + "' (expected zero, trigpoly or legendre)");
    }

    ModeSet modeset(const json& root) const
    {
        if (!root.is_object()) fail("", "expected an object");
        const int N = integer(field(root, "", "N"), "/N");
        if (N < 0) fail("/N", "N must be >= 0");
        ModeSet ms = ModeSet::zeros(N);
        const json& v0 = array(field(root, "", "v0"), "/v0", 2);
        for (int mu = 0; mu < 2; ++mu) ms.v0[mu] = fn(v0[mu], "/v0/" + std::to_string(mu));
        for (const char* key : {"vc", "vs"}) {
            const std::string kp = std::string("/") + key;
            if (N == 0 && !root.contains(key)) continue;
            const json& outer = array(field(root, "", key), kp, 2);
            for (int mu = 0; mu < 2; ++mu) {
                const std::string mp = kp + "/" + std::to_string(mu);
                const json& row = array(outer[mu], mp, std::size_t(N));
                for (int n = 0; n < N; ++n) {
                    AnalyticFn1D f = fn(row[n], mp + "/" + std::to_string(n));
                    (key[1] == 'c' ? ms.vc : ms.vs)[mu][n] = std::move(f);
                }
            }
        }
        return ms;
    }

private:
    const std::string& text_;
    const PositionIndex& idx_;
};

} // namespace

ModeSet parse_modeset(const std::string& text)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [l, c] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError("modeset:" + std::to_string(l) + ":" + std::to_string(c) + ": syntax error: " + e.what(), l,
                         c);
    }
    const PositionIndex idx(text);
    return Reader(text, idx).modeset(root);
}

ModeSet load_modeset(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open modeset file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_modeset(ss.str());
}

} // namespace ncsphere
