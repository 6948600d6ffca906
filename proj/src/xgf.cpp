#include "xnmr/xgf.hpp"

#include "xnmr/errors.hpp"

#include <algorithm>
#include <charconv>

namespace xnmr {

std::string emit_xgf(const AtomTable& atoms, std::span<const GroundRule> rules) {
    std::string out = "xgf " + std::to_string(xgf_version) + "\n";
    for (AtomId id = 1; id <= atoms.size(); ++id) {
        out += "a " + std::to_string(id) + " " + atoms.text(id) + "\n";
    }
    for (const GroundRule& r : rules) {
        out += "r " + std::to_string(r.head) + " " + std::to_string(r.pos.size()) + " " + std::to_string(r.neg.size());
        for (AtomId a : r.pos) out += " " + std::to_string(a);
        for (AtomId a : r.neg) out += " " + std::to_string(a);
        out += "\n";
    }
    out += "e\n";
    return out;
}

std::string emit_xgf(const ResidualProgram& rp) { return emit_xgf(rp.atoms, rp.rules); }
std::string emit_xgf(const GroundProgram& gp) { return emit_xgf(gp.atoms, gp.rules); }

namespace {

class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    ResidualProgram read() {
        if (!next_line() || line_ != "xgf " + std::to_string(xgf_version)) {
            if (line_.rfind("xgf ", 0) == 0) fail("unsupported version '" + std::string(line_.substr(4)) + "'");
            fail("missing 'xgf 1' header");
        }

        std::vector<std::string> texts;
        std::vector<GroundRule> rules;
        bool terminated = false;
        while (next_line()) {
            if (line_ == "e") {
                terminated = true;
                break;
            }
            fields_ = split(line_);
            if (fields_.empty()) fail("empty line");
            if (fields_[0] == "a") {
                if (!rules.empty()) fail("atom declaration after rules");
                if (fields_.size() != 3) fail("atom line needs an id and a text");
                const std::size_t id = number(fields_[1]);
                if (id != texts.size() + 1) fail("atom ids must be dense and ascending");
                const std::string_view t = fields_[2];
                if (!texts.empty() && !(texts.back() < t)) fail("atom texts must be strictly ascending");
                texts.emplace_back(t);
            } else if (fields_[0] == "r") {
                if (fields_.size() < 4) fail("rule line too short");
                GroundRule r;
                r.head = atom_ref(fields_[1], texts.size());
                const std::size_t npos = number(fields_[2]);
                const std::size_t nneg = number(fields_[3]);
                if (npos > fields_.size() || nneg > fields_.size()) fail("rule literal count mismatch");
                if (fields_.size() - 4 != npos + nneg) fail("rule literal count mismatch");
                for (std::size_t i = 0; i < npos; ++i) r.pos.push_back(atom_ref(fields_[4 + i], texts.size()));
                for (std::size_t i = 0; i < nneg; ++i) r.neg.push_back(atom_ref(fields_[4 + npos + i], texts.size()));
                if (!strictly_ascending(r.pos) || !strictly_ascending(r.neg)) fail("body ids must be strictly ascending");
                if (!rules.empty() && !(rules.back() < r)) fail("rules out of canonical order");
                rules.push_back(std::move(r));
            } else {
                fail("unknown record '" + std::string(fields_[0]) + "'");
            }
        }
        if (!terminated) fail("missing 'e' terminator");
        if (pos_ != text_.size()) {
            ++lineno_;
            fail("content after terminator");
        }

        ResidualProgram rp;
        rp.atoms = AtomTable::from_texts(std::move(texts));
        rp.rules = std::move(rules);
        return rp;
    }

private:
    // Every line, including the last, must end in LF.
    bool next_line() {
        if (pos_ >= text_.size()) return false;
        const std::size_t nl = text_.find('\n', pos_);
        ++lineno_;
        if (nl == std::string_view::npos) {
            line_ = text_.substr(pos_);
            fail("missing line terminator");
        }
        line_ = text_.substr(pos_, nl - pos_);
        pos_ = nl + 1;
        for (char c : line_) {
            const auto u = static_cast<unsigned char>(c);
            if (u < 0x20 || u > 0x7e) fail("non-printable or non-ASCII byte");
        }
        return true;
    }

    std::vector<std::string_view> split(std::string_view line) {
        std::vector<std::string_view> out;
        std::size_t start = 0;
        for (;;) {
            const std::size_t sp = line.find(' ', start);
            const std::string_view field = line.substr(start, sp == std::string_view::npos ? sp : sp - start);
            if (field.empty()) fail("fields must be separated by single spaces");
            out.push_back(field);
            if (sp == std::string_view::npos) break;
            start = sp + 1;
        }
        return out;
    }

    std::size_t number(std::string_view s) {
        if (s.empty() || (s.size() > 1 && s[0] == '0')) fail("malformed number '" + std::string(s) + "'");
        std::size_t v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || p != s.data() + s.size()) fail("malformed number '" + std::string(s) + "'");
        return v;
    }

    AtomId atom_ref(std::string_view s, std::size_t declared) {
        const std::size_t v = number(s);
        if (v == 0 || v > declared) fail("unknown atom id " + std::string(s));
        return static_cast<AtomId>(v);
    }

    static bool strictly_ascending(const AtomSet& s) {
        return std::adjacent_find(s.begin(), s.end(), [](AtomId a, AtomId b) { return a >= b; }) == s.end();
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw FormatError(std::max<std::size_t>(lineno_, 1), message);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t lineno_ = 0;
    std::string_view line_;
    std::vector<std::string_view> fields_;
};

} // namespace

ResidualProgram parse_xgf(std::string_view text) { return Reader(text).read(); }

} // namespace xnmr
