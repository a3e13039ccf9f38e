// Copyright 2026 the tsbft authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file or http://www.apache.org/licenses/LICENSE-2.0

#include "tsbft/value.hpp"

namespace tsbft {

namespace {

bool is_plain(char c) {
    // Characters that survive unescaped in trace and scenario files. Space,
    // '%', '~', and control bytes must be escaped; '~' alone denotes empty.
    if (c >= 'a' && c <= 'z') return true;
    if (c >= 'A' && c <= 'Z') return true;
    if (c >= '0' && c <= '9') return true;
    switch (c) {
    case '-':
    case '_':
    case '.':
    case '+':
    case '/':
        return true;
    default:
        return false;
    }
}

char hex_digit(int v) {
    return v < 10 ? static_cast<char>('0' + v) : static_cast<char>('A' + v - 10);
}

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
}

} // namespace

std::string Value::token() const {
    if (empty_) {
        return "~";
    }
    std::string out;
    out.reserve(bytes_.size());
    for (char c : bytes_) {
        if (is_plain(c)) {
            out.push_back(c);
        } else {
            unsigned char u = static_cast<unsigned char>(c);
            out.push_back('%');
            out.push_back(hex_digit(u >> 4));
            out.push_back(hex_digit(u & 0xf));
        }
    }
    if (out.empty()) {
        // A present-but-zero-length payload still needs a non-empty token.
        return "%";
    }
    return out;
}

std::optional<Value> Value::from_token(std::string_view tok) {
    if (tok.empty()) {
        return std::nullopt;
    }
    if (tok == "~") {
        return Value::empty();
    }
    if (tok == "%") {
        return Value::of("");
    }
    std::string bytes;
    bytes.reserve(tok.size());
    for (size_t i = 0; i < tok.size(); ++i) {
        char c = tok[i];
        if (c == '%') {
            if (i + 2 >= tok.size()) return std::nullopt;
            int hi = hex_value(tok[i + 1]);
            int lo = hex_value(tok[i + 2]);
            if (hi < 0 || lo < 0) return std::nullopt;
            bytes.push_back(static_cast<char>((hi << 4) | lo));
            i += 2;
        } else if (is_plain(c)) {
            bytes.push_back(c);
        } else {
            return std::nullopt;
        }
    }
    return Value::of(std::move(bytes));
}

} // namespace tsbft
