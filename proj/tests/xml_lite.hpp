#pragma once

// Minimal well-formedness check for the SVG output: one root element,
// balanced tags, sane attribute quoting, known entities.

#include <cctype>
#include <string>
#include <vector>

inline bool xml_well_formed(const std::string& doc, std::string* err) {
    auto fail = [&](const std::string& msg) {
        if (err) *err = msg;
        return false;
    };
    std::vector<std::string> stack;
    std::size_t i = 0;
    bool seen_root = false, in_decl_ok = true;
    while (i < doc.size()) {
        char ch = doc[i];
        if (ch == '<') {
            if (i + 1 >= doc.size()) return fail("dangling '<'");
            if (doc[i + 1] == '?') {
                if (!in_decl_ok) return fail("declaration after content");
                std::size_t close = doc.find("?>", i);
                if (close == std::string::npos) return fail("unterminated declaration");
                i = close + 2;
                continue;
            }
            in_decl_ok = false;
            bool closing = doc[i + 1] == '/';
            std::size_t p = i + (closing ? 2 : 1);
            std::size_t name_start = p;
            while (p < doc.size() &&
                   (std::isalnum(static_cast<unsigned char>(doc[p])) || doc[p] == ':' ||
                    doc[p] == '-' || doc[p] == '_')) {
                ++p;
            }
            if (p == name_start) return fail("empty tag name");
            std::string name = doc.substr(name_start, p - name_start);
            bool self_closed = false;
            bool in_quote = false;
            char quote = 0;
            for (; p < doc.size(); ++p) {
                char c2 = doc[p];
                if (in_quote) {
                    if (c2 == quote) in_quote = false;
                    continue;
                }
                if (c2 == '"' || c2 == '\'') {
                    in_quote = true;
                    quote = c2;
                } else if (c2 == '/') {
                    if (p + 1 < doc.size() && doc[p + 1] == '>') {
                        self_closed = true;
                        ++p;
                        break;
                    }
                } else if (c2 == '>') {
                    break;
                } else if (c2 == '<') {
                    return fail("'<' inside tag " + name);
                }
            }
            if (p >= doc.size() || doc[p] != '>') return fail("unterminated tag " + name);
            if (in_quote) return fail("unterminated attribute quote in " + name);
            if (closing) {
                if (self_closed) return fail("closing tag cannot self-close");
                if (stack.empty() || stack.back() != name) {
                    return fail("mismatched closing tag " + name);
                }
                stack.pop_back();
            } else if (!self_closed) {
                if (stack.empty() && seen_root) return fail("multiple root elements");
                stack.push_back(name);
                seen_root = true;
            } else if (stack.empty()) {
                if (seen_root) return fail("multiple root elements");
                seen_root = true;
            }
            i = p + 1;
        } else if (ch == '&') {
            std::size_t semi = doc.find(';', i);
            if (semi == std::string::npos || semi - i > 6) return fail("bad entity");
            std::string ent = doc.substr(i + 1, semi - i - 1);
            if (ent != "amp" && ent != "lt" && ent != "gt" && ent != "quot" && ent != "apos") {
                return fail("unknown entity " + ent);
            }
            i = semi + 1;
        } else if (ch == '>') {
            return fail("stray '>'");
        } else {
            ++i;
        }
    }
    if (!stack.empty()) return fail("unclosed tag " + stack.back());
    if (!seen_root) return fail("no root element");
    return true;
}
