#include "shocklab/method_label.hpp"

#include <cctype>
#include <vector>

#include "shocklab/errors.hpp"

namespace shocklab {

namespace {

struct Cursor {
    std::string text;       // uppercased, whitespace and '^' removed
    std::vector<int> where; // original position of each kept character
    std::size_t at = 0;
    const std::string* label;

    [[noreturn]] void fail(const std::string& what) const {
        const int pos = at < where.size() ? where[at] : static_cast<int>(label->size());
        throw ConfigError("method label '" + *label + "': " + what + " at position " +
                          std::to_string(pos));
    }
    bool eat(const char* token) {
        std::size_t k = 0;
        while (token[k]) {
            if (at + k >= text.size() || text[at + k] != token[k]) return false;
            ++k;
        }
        at += k;
        return true;
    }
    bool done() const { return at >= text.size(); }
};

Cursor scan(const std::string& label) {
    Cursor c;
    c.label = &label;
    for (std::size_t i = 0; i < label.size(); ++i) {
        const char ch = label[i];
        if (std::isspace(static_cast<unsigned char>(ch)) || ch == '^') continue;
        c.text.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
        c.where.push_back(static_cast<int>(i));
    }
    return c;
}

struct Suffix {
    const char* token;
    const char* canonical;
    FluxKind flux;
    bool has_split;
    SplitMode split;
};

// Longest tokens first so ROEHH2 wins over ROE and OSHO/OSHP stay distinct.
const Suffix kSuffixes[] = {
    {"ROEHH2", "-ROEHH2", FluxKind::RoeHH2, false, SplitMode::LaxFriedrichs},
    {"ROE", "-ROE", FluxKind::Roe, true, SplitMode::RoeMatrix},
    {"AUSM", "-AUSM", FluxKind::AusmPlusUp, false, SplitMode::LaxFriedrichs},
    {"OSHP", "-OshP", FluxKind::OsherP, false, SplitMode::LaxFriedrichs},
    {"OSHO", "-OshO", FluxKind::OsherO, false, SplitMode::LaxFriedrichs},
    {"LF", "-LF", FluxKind::GlobalLaxFriedrichs, true, SplitMode::LaxFriedrichs},
    {"LB", "-LB", FluxKind::Roe, true, SplitMode::LeftBiased},
    {"C", "-C", FluxKind::Central, true, SplitMode::Zero},
};

const Suffix& parse_suffix(Cursor& c) {
    if (!c.eat("-")) c.fail("expected '-' before the flux suffix");
    for (const Suffix& s : kSuffixes)
        if (c.eat(s.token)) return s;
    c.fail("unknown flux suffix");
}

} // namespace

SchemeConfig parse_method_label(const std::string& label) {
    Cursor c = scan(label);
    SchemeConfig out;

    if (c.eat("DG")) {
        out.family = SchemeConfig::Family::Galerkin;
        if (!c.eat("P")) c.fail("expected 'P' and a polynomial degree");
        if (c.done() || !std::isdigit(static_cast<unsigned char>(c.text[c.at])))
            c.fail("expected a polynomial degree");
        const int N = c.text[c.at] - '0';
        ++c.at;
        if (N > 7) c.fail("polynomial degree above 7");
        out.dg.N = N;
        const Suffix& s = parse_suffix(c);
        out.dg.flux.kind = s.flux;
        if (!c.done()) c.fail("trailing characters");
        out.canonical = "DGP" + std::to_string(N) + s.canonical;
        return out;
    }

    if (c.eat("FD"))
        out.family = SchemeConfig::Family::FiniteDifference;
    else if (c.eat("FV"))
        out.family = SchemeConfig::Family::FiniteVolume;
    else
        c.fail("expected FD, FV or DG");
    out.scheme.finite_volume = out.family == SchemeConfig::Family::FiniteVolume;

    bool lcd = c.eat("LCD");
    bool linear = false;
    if (c.eat("LR"))
        linear = true;
    else if (!c.eat("ZW"))
        c.fail("expected LR or ZW reconstruction");
    int order = 0;
    if (!c.done() && std::isdigit(static_cast<unsigned char>(c.text[c.at])))
        order = c.text[c.at] - '0';
    if (order != 1 && order != 3 && order != 5 && order != 7) c.fail("order must be 1, 3, 5 or 7");
    ++c.at;
    if (!lcd) lcd = c.eat("LCD");

    out.scheme.r = (order + 1) / 2;
    out.scheme.kind = linear ? WenoKind::Linear : (out.scheme.r == 2 ? WenoKind::NP3 : WenoKind::Z);
    out.scheme.characteristic = lcd;

    const std::size_t suffix_at = c.at;
    const Suffix& s = parse_suffix(c);
    std::string tail = s.canonical;
    if (out.family == SchemeConfig::Family::FiniteDifference) {
        if (!s.has_split) {
            c.at = suffix_at + 1;
            c.fail("flux suffix needs a finite-volume or DG method");
        }
        out.scheme.split = s.split;
        if (c.eat("-ROT")) {
            out.scheme.split = SplitMode::Rotated;
            tail += "-ROT";
        }
    } else {
        out.scheme.flux.kind = s.flux;
    }
    if (!c.done()) c.fail("trailing characters");

    out.canonical = std::string(out.scheme.finite_volume ? "FV" : "FD") + (lcd ? "LCD" : "") +
                    (linear ? "LR" : "ZW") + std::to_string(order) + tail;
    return out;
}

} // namespace shocklab
