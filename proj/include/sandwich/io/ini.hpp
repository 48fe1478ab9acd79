#pragma once

#include "sandwich/numeric.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace sandwich::io {

// An INI document that remembers where each key was written and which keys were read, so that
// field errors and unknown keys can be reported with their line.
class IniDoc {
public:
    IniDoc(const std::string& text, std::string source) : source_(std::move(source)) {
        std::istringstream in(text);
        try {
            boost::property_tree::ini_parser::read_ini(in, tree_);
        } catch (const boost::property_tree::ini_parser_error& e) {
            fail(ErrorCode::ParseError, source_ + ":" + std::to_string(e.line()) + ": " + e.message());
        }
        index_lines(text);
    }

    bool has_section(const std::string& section) const { return tree_.get_child_optional(section).has_value(); }

    bool has(const std::string& section, const std::string& key) const {
        auto sec = tree_.get_child_optional(section);
        return sec && sec->get_child_optional(key).has_value();
    }

    std::string raw(const std::string& section, const std::string& key) {
        if (!has(section, key)) fail(ErrorCode::ParseError, where(section, key) + "missing required field");
        used_.insert(section + "." + key);
        return tree_.get_child(section).get<std::string>(key);
    }

    // Applies `parse` to the field, prefixing any error with the field's location.
    template <class F>
    auto field(const std::string& section, const std::string& key, F&& parse) {
        std::string text = raw(section, key);
        try {
            return parse(text);
        } catch (const Error& e) {
            fail(ErrorCode::ParseError, where(section, key) + e.what());
        } catch (const std::exception& e) {
            fail(ErrorCode::ParseError, where(section, key) + e.what());
        }
    }

    template <class T, class F>
    T field_or(const std::string& section, const std::string& key, T fallback, F&& parse) {
        if (!has(section, key)) return fallback;
        return field(section, key, std::forward<F>(parse));
    }

    void reject_unknown() const {
        for (const auto& [section, body] : tree_) {
            if (body.empty() && !body.data().empty())
                fail(ErrorCode::ParseError, source_ + ": key '" + section + "' outside any section");
            for (const auto& [key, value] : body) {
                (void)value;
                if (!used_.count(section + "." + key))
                    fail(ErrorCode::ParseError, where(section, key) + "unknown key");
            }
        }
    }

    std::string where(const std::string& section, const std::string& key) const {
        auto it = lines_.find(section + "." + key);
        std::string line = it == lines_.end() ? "" : std::to_string(it->second) + ":";
        return source_ + ":" + line + " [" + section + "] " + key + ": ";
    }

private:
    void index_lines(const std::string& text) {
        std::istringstream in(text);
        std::string line, section;
        for (int n = 1; std::getline(in, line); ++n) {
            auto trim = [](std::string s) {
                auto b = s.find_first_not_of(" \t\r");
                auto e = s.find_last_not_of(" \t\r");
                return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
            };
            std::string t = trim(line);
            if (t.empty() || t[0] == ';' || t[0] == '#') continue;
            if (t.front() == '[' && t.back() == ']') {
                section = trim(t.substr(1, t.size() - 2));
            } else if (auto eq = t.find('='); eq != std::string::npos) {
                lines_.emplace(section + "." + trim(t.substr(0, eq)), n);
            }
        }
    }

    std::string source_;
    boost::property_tree::ptree tree_;
    std::map<std::string, int> lines_;
    std::set<std::string> used_;
};

// Ordered INI writer; values are written verbatim.
class IniWriter {
public:
    IniWriter& section(const std::string& name) {
        out_ << (first_ ? "" : "\n") << "[" << name << "]\n";
        first_ = false;
        return *this;
    }
    IniWriter& kv(const std::string& key, const std::string& value) {
        out_ << key << " = " << value << "\n";
        return *this;
    }
    std::string str() const { return out_.str(); }

private:
    std::ostringstream out_;
    bool first_ = true;
};

inline std::string fmt_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, end);
}

inline double parse_double(const std::string& s) {
    double v = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size()) fail(ErrorCode::ParseError, "not a number: '" + s + "'");
    return v;
}

inline std::uint64_t parse_u64(const std::string& s) {
    std::uint64_t v = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size())
        fail(ErrorCode::ParseError, "not a non-negative integer: '" + s + "'");
    return v;
}

inline bool parse_bool(const std::string& s) {
    if (s == "true") return true;
    if (s == "false") return false;
    fail(ErrorCode::ParseError, "expected true or false, got '" + s + "'");
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else if (c != ' ' && c != '\t') {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

// Canonical text for a rational: integer, or num/den.
inline std::string fmt_rational(const Rational& r) {
    if (bmp::denominator(r) == 1) return bmp::numerator(r).str();
    return bmp::numerator(r).str() + "/" + bmp::denominator(r).str();
}

}  // namespace sandwich::io
