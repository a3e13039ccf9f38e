// Copyright 2026 the tsbft authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file or http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace tsbft {

// A candidate value: an opaque byte string under the lexicographic total
// order, or the distinguished empty value. The empty value sorts before
// every payload and is never proposable or committable.
class Value {
public:
    Value() = default; // the empty value

    static Value empty() { return Value{}; }

    static Value of(std::string bytes) {
        Value v;
        v.empty_ = false;
        v.bytes_ = std::move(bytes);
        return v;
    }

    bool is_empty() const { return empty_; }
    const std::string& bytes() const { return bytes_; }

    friend bool operator==(const Value&, const Value&) = default;

    friend std::strong_ordering operator<=>(const Value& a, const Value& b) {
        if (a.empty_ != b.empty_) {
            return a.empty_ ? std::strong_ordering::less
                            : std::strong_ordering::greater;
        }
        return a.bytes_ <=> b.bytes_;
    }

    // Wire/trace form: "~" for the empty value, percent-encoded bytes
    // otherwise. Decoding rejects malformed escapes.
    std::string token() const;
    static std::optional<Value> from_token(std::string_view tok);

private:
    bool empty_ = true;
    std::string bytes_;
};

} // namespace tsbft
