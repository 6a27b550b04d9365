#pragma once

#include <cmath>
#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace btcts {

/// Minimal JSON value with insertion-ordered object keys and fixed number
/// formatting (%.10g, non-finite -> null), so identical inputs serialize
/// byte-identically on every platform. Write-only by design: reports are
/// emitted, never parsed back.
class Json {
public:
    static Json object() { return Json(Kind::object); }
    static Json array() { return Json(Kind::array); }
    static Json null() { return Json(Kind::null); }
    static Json boolean(bool b) {
        Json j(Kind::boolean);
        j.bool_ = b;
        return j;
    }
    static Json number(double v) {
        if (!std::isfinite(v)) return null();
        Json j(Kind::number);
        j.num_ = format_double(v);
        return j;
    }
    static Json integer(long long v) {
        Json j(Kind::number);
        j.num_ = std::to_string(v);
        return j;
    }
    static Json string(std::string s) {
        Json j(Kind::string);
        j.str_ = std::move(s);
        return j;
    }

    Json& set(const std::string& key, Json value) {
        members_.emplace_back(key, std::move(value));
        return *this;
    }
    Json& push(Json value) {
        items_.push_back(std::move(value));
        return *this;
    }

    std::string dump(int indent = 2) const {
        std::string out;
        write(out, indent, 0);
        out.push_back('\n');
        return out;
    }

private:
    enum class Kind { null, boolean, number, string, array, object };
    explicit Json(Kind k) : kind_(k) {}

    static std::string format_double(double v) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.10g", v);
        return buf;
    }

    static void escape(std::string& out, const std::string& s) {
        out.push_back('"');
        for (char c : s) {
            switch (c) {
                case '"': out += "\\\""; break;
                case '\\': out += "\\\\"; break;
                case '\n': out += "\\n"; break;
                case '\r': out += "\\r"; break;
                case '\t': out += "\\t"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                        out += buf;
                    } else {
                        out.push_back(c);
                    }
            }
        }
        out.push_back('"');
    }

    void write(std::string& out, int indent, int depth) const {
        const std::string pad(static_cast<std::size_t>(indent) * (depth + 1), ' ');
        const std::string close_pad(static_cast<std::size_t>(indent) * depth, ' ');
        switch (kind_) {
            case Kind::null: out += "null"; break;
            case Kind::boolean: out += bool_ ? "true" : "false"; break;
            case Kind::number: out += num_; break;
            case Kind::string: escape(out, str_); break;
            case Kind::array:
                if (items_.empty()) {
                    out += "[]";
                    break;
                }
                out += "[\n";
                for (std::size_t i = 0; i < items_.size(); ++i) {
                    out += pad;
                    items_[i].write(out, indent, depth + 1);
                    if (i + 1 < items_.size()) out.push_back(',');
                    out.push_back('\n');
                }
                out += close_pad + "]";
                break;
            case Kind::object:
                if (members_.empty()) {
                    out += "{}";
                    break;
                }
                out += "{\n";
                for (std::size_t i = 0; i < members_.size(); ++i) {
                    out += pad;
                    escape(out, members_[i].first);
                    out += ": ";
                    members_[i].second.write(out, indent, depth + 1);
                    if (i + 1 < members_.size()) out.push_back(',');
                    out.push_back('\n');
                }
                out += close_pad + "}";
                break;
        }
    }

    Kind kind_ = Kind::null;
    bool bool_ = false;
    std::string num_;
    std::string str_;
    std::vector<Json> items_;
    std::vector<std::pair<std::string, Json>> members_;
};

}  // namespace btcts
