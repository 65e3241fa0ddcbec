#include "pointspec/table.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include "json.hpp"
#include <sstream>

#include "pointspec/errors.hpp"

namespace pointspec {

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s(buf);
    if (s.find_first_of(".eE") == std::string::npos &&
        s.find_first_of("0123456789") != std::string::npos) {
        s += ".0";
    }
    return s;
}

bool needs_quoting(const std::string& s) {
    if (s.empty()) return false;
    if (std::isspace(static_cast<unsigned char>(s.front())) ||
        std::isspace(static_cast<unsigned char>(s.back()))) {
        return true;
    }
    return s.find_first_of(",\"\n\r") != std::string::npos;
}

std::string csv_field(const std::string& s) {
    if (!needs_quoting(s)) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += ch;
        }
    }
    return out;
}

bool integer_shaped(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

Cell classify(const std::string& field, bool was_quoted) {
    if (was_quoted || field.empty()) return field;
    if (integer_shaped(field)) return static_cast<long long>(std::strtoll(field.c_str(), nullptr, 10));
    char* end = nullptr;
    double v = std::strtod(field.c_str(), &end);
    if (end && *end == '\0' && end != field.c_str()) return v;
    return field;
}

std::vector<std::pair<std::string, bool>> split_csv_line(const std::string& line) {
    std::vector<std::pair<std::string, bool>> fields;
    std::string cur;
    bool quoted = false, in_quotes = false;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size()) {
            fields.emplace_back(cur, quoted);
            break;
        }
        char ch = line[i];
        if (in_quotes) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                cur += ch;
            }
        } else if (ch == '"' && cur.empty()) {
            in_quotes = true;
            quoted = true;
        } else if (ch == ',') {
            fields.emplace_back(cur, quoted);
            cur.clear();
            quoted = false;
        } else {
            cur += ch;
        }
    }
    return fields;
}

double cell_as_double(const Cell& c, bool* ok) {
    *ok = true;
    if (std::holds_alternative<double>(c)) return std::get<double>(c);
    if (std::holds_alternative<long long>(c)) return static_cast<double>(std::get<long long>(c));
    *ok = false;
    return 0.0;
}

}  // namespace

std::string format_cell(const Cell& cell) {
    if (std::holds_alternative<double>(cell)) return format_double(std::get<double>(cell));
    if (std::holds_alternative<long long>(cell)) return std::to_string(std::get<long long>(cell));
    return std::get<std::string>(cell);
}

std::string to_csv(const ResultTable& t) {
    std::string out;
    out += "# tool: ";
    out += kToolName;
    out += ' ';
    out += kToolVersion;
    out += '\n';
    out += "# table: " + t.title + '\n';
    for (const auto& kv : t.meta) out += "# " + kv.first + ": " + kv.second + '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i) out += ',';
        out += csv_field(t.columns[i]);
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += csv_field(format_cell(row[i]));
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const ResultTable& t) {
    nlohmann::ordered_json j;
    j["tool"] = std::string(kToolName) + " " + kToolVersion;
    j["table"] = t.title;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& kv : t.meta) meta[kv.first] = kv.second;
    j["meta"] = meta;
    j["columns"] = t.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        for (const auto& cell : row) {
            if (std::holds_alternative<double>(cell)) {
                r.push_back(std::get<double>(cell));
            } else if (std::holds_alternative<long long>(cell)) {
                r.push_back(std::get<long long>(cell));
            } else {
                r.push_back(std::get<std::string>(cell));
            }
        }
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

std::string to_svg(const ResultTable& t) {
    constexpr double kw = 640, kh = 480;
    constexpr double ml = 80, mr = 24, mt = 48, mb = 56;
    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
           "viewBox=\"0 0 640 480\">\n"
        << "  <rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" fill=\"white\"/>\n"
        << "  <text x=\"320\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"16\">"
        << xml_escape(t.title) << "</text>\n";

    long long xcol = -1;
    std::vector<std::pair<std::string, std::size_t>> ycols;
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (t.columns[i] == t.plot_x) xcol = static_cast<long long>(i);
        for (const auto& name : t.plot_y) {
            if (t.columns[i] == name) ycols.emplace_back(name, i);
        }
    }

    // Gather usable points per series, applying the log transforms.
    std::vector<std::vector<std::pair<double, double>>> series(ycols.size());
    if (xcol >= 0) {
        for (const auto& row : t.rows) {
            bool okx = false;
            double x = cell_as_double(row[static_cast<std::size_t>(xcol)], &okx);
            if (!okx) continue;
            if (t.log_x) {
                if (!(x > 0.0)) continue;
                x = std::log10(x);
            }
            for (std::size_t s = 0; s < ycols.size(); ++s) {
                bool oky = false;
                double y = cell_as_double(row[ycols[s].second], &oky);
                if (!oky) continue;
                if (t.log_y) {
                    if (!(y > 0.0)) continue;
                    y = std::log10(y);
                }
                series[s].emplace_back(x, y);
            }
        }
    }

    bool any = false;
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    for (const auto& s : series) {
        for (const auto& p : s) {
            if (!any) {
                xmin = xmax = p.first;
                ymin = ymax = p.second;
                any = true;
            } else {
                xmin = std::min(xmin, p.first);
                xmax = std::max(xmax, p.first);
                ymin = std::min(ymin, p.second);
                ymax = std::max(ymax, p.second);
            }
        }
    }
    if (!any) {
        svg << "  <text x=\"320\" y=\"240\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"13\">no plottable data</text>\n</svg>\n";
        return svg.str();
    }
    if (xmax == xmin) {
        xmin -= 1.0;
        xmax += 1.0;
    }
    if (ymax == ymin) {
        ymin -= 1.0;
        ymax += 1.0;
    }
    double xpad = 0.05 * (xmax - xmin), ypad = 0.05 * (ymax - ymin);
    xmin -= xpad;
    xmax += xpad;
    ymin -= ypad;
    ymax += ypad;
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (kw - ml - mr); };
    auto py = [&](double y) { return kh - mb - (y - ymin) / (ymax - ymin) * (kh - mt - mb); };

    svg << "  <rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << (kw - ml - mr)
        << "\" height=\"" << (kh - mt - mb)
        << "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1\"/>\n";

    char buf[48];
    for (int i = 0; i <= 4; ++i) {
        double fx = xmin + (xmax - xmin) * i / 4.0;
        double fy = ymin + (ymax - ymin) * i / 4.0;
        double lx = t.log_x ? std::pow(10.0, fx) : fx;
        double ly = t.log_y ? std::pow(10.0, fy) : fy;
        std::snprintf(buf, sizeof buf, "%.4g", lx);
        svg << "  <line x1=\"" << px(fx) << "\" y1=\"" << (kh - mb) << "\" x2=\"" << px(fx)
            << "\" y2=\"" << (kh - mb + 5) << "\" stroke=\"#444444\"/>\n"
            << "  <text x=\"" << px(fx) << "\" y=\"" << (kh - mb + 20)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << buf
            << "</text>\n";
        std::snprintf(buf, sizeof buf, "%.4g", ly);
        svg << "  <line x1=\"" << (ml - 5) << "\" y1=\"" << py(fy) << "\" x2=\"" << ml
            << "\" y2=\"" << py(fy) << "\" stroke=\"#444444\"/>\n"
            << "  <text x=\"" << (ml - 8) << "\" y=\"" << (py(fy) + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << buf
            << "</text>\n";
    }
    svg << "  <text x=\"" << (ml + (kw - ml - mr) / 2) << "\" y=\"" << (kh - 12)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << xml_escape(t.plot_x) << (t.log_x ? " (log)" : "") << "</text>\n";

    const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    for (std::size_t s = 0; s < series.size(); ++s) {
        if (series[s].empty()) continue;
        const char* color = palette[s % 5];
        svg << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& p : series[s]) {
            std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(p.first), py(p.second));
            svg << buf;
        }
        svg << "\"/>\n";
        for (const auto& p : series[s]) {
            svg << "  <circle cx=\"" << px(p.first) << "\" cy=\"" << py(p.second)
                << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
        }
        double lyy = mt + 16 + 16 * static_cast<double>(s);
        svg << "  <rect x=\"" << (kw - mr - 150) << "\" y=\"" << (lyy - 9)
            << "\" width=\"12\" height=\"4\" fill=\"" << color << "\"/>\n"
            << "  <text x=\"" << (kw - mr - 133) << "\" y=\"" << lyy
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << xml_escape(ycols[s].first)
            << (t.log_y ? " (log)" : "") << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void write_table(const ResultTable& t, const std::vector<std::string>& formats,
                 const std::string& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir + ": " + ec.message());
    std::string stem = t.title.empty() ? std::string("table") : t.title;
    for (char& ch : stem) {
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '-' && ch != '_') ch = '-';
    }
    for (const auto& fmt : formats) {
        std::string body;
        if (fmt == "csv") {
            body = to_csv(t);
        } else if (fmt == "json") {
            body = to_json(t);
        } else if (fmt == "svg") {
            body = to_svg(t);
        } else {
            throw ConfigError("unknown output format: " + fmt);
        }
        std::string path = out_dir + "/" + stem + "." + fmt;
        std::ofstream f(path, std::ios::binary);
        f << body;
        if (!f.good()) throw IoError("cannot write " + path);
    }
}

ResultTable read_csv_table(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f.good()) throw IoError("cannot open " + path);
    ResultTable t;
    std::string line;
    bool have_header = false;
    while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty() && line[0] == '#') {
            std::string body = line.substr(line.size() > 1 && line[1] == ' ' ? 2 : 1);
            std::size_t sep = body.find(": ");
            if (sep == std::string::npos) {
                t.meta.emplace_back(body, "");
            } else if (body.substr(0, sep) == "table") {
                t.title = body.substr(sep + 2);
            } else {
                t.meta.emplace_back(body.substr(0, sep), body.substr(sep + 2));
            }
            continue;
        }
        auto fields = split_csv_line(line);
        if (!have_header) {
            for (const auto& fv : fields) t.columns.push_back(fv.first);
            have_header = true;
            continue;
        }
        if (fields.size() == 1 && fields[0].first.empty() && !fields[0].second) continue;
        std::vector<Cell> row;
        for (const auto& fv : fields) row.push_back(classify(fv.first, fv.second));
        t.rows.push_back(std::move(row));
    }
    if (!have_header) throw IoError("no header row in " + path);
    return t;
}

}  // namespace pointspec
