#include "cobfc/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace cobfc {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

// Full-string numeric parse; rejects non-finite results and nan/inf tokens.
std::optional<double> parse_number(const std::string& s) {
    std::string t = trim(s);
    if (t.empty()) return std::nullopt;
    const char* begin = t.c_str();
    char* end = nullptr;
    errno = 0;
    double v = std::strtod(begin, &end);
    if (end != begin + t.size() || errno == ERANGE || !std::isfinite(v)) return std::nullopt;
    return v;
}

struct Row {
    std::vector<std::string> fields;
    std::vector<bool> quoted;  // quoted fields never count as missing markers
    int line = 0;
};

// ---------------------------------------------------------------- CSV -----

// RFC-4180 record reader: quoted fields may contain commas, doubled quotes
// and newlines. Records are separated by unquoted newlines.
std::vector<Row> read_csv_records(std::string_view text) {
    std::vector<Row> rows;
    Row cur;
    std::string field;
    bool in_quotes = false, field_quoted = false, any_field = false;
    int line = 1, record_line = 1;

    auto end_field = [&] {
        cur.fields.push_back(field);
        cur.quoted.push_back(field_quoted);
        field.clear();
        field_quoted = false;
        any_field = false;
    };
    auto end_record = [&] {
        end_field();
        cur.line = record_line;
        rows.push_back(std::move(cur));
        cur = Row{};
        record_line = line;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                in_quotes = true;
                field_quoted = true;
                any_field = true;
                break;
            case ',':
                end_field();
                any_field = true;  // a comma implies a following (possibly empty) field
                break;
            case '\r':
                break;
            case '\n':
                ++line;
                if (any_field || !field.empty() || !cur.fields.empty()) end_record();
                record_line = line;
                break;
            default:
                field += c;
                any_field = true;
                break;
        }
    }
    if (in_quotes) throw ParseError(line, "unterminated quoted field");
    if (any_field || !field.empty() || !cur.fields.empty()) {
        cur.line = record_line;
        end_field();
        rows.push_back(std::move(cur));
    }
    return rows;
}

Dataset build_from_rows(const std::vector<std::string>& header, int header_line,
                        const std::vector<Row>& body,
                        const std::optional<std::string>& class_column) {
    if (header.empty()) throw ParseError(header_line, "empty header row");
    const int ncols = static_cast<int>(header.size());

    int class_idx = ncols - 1;
    if (class_column) {
        auto it = std::find(header.begin(), header.end(), *class_column);
        if (it == header.end())
            throw ParseError(header_line, "class column '" + *class_column + "' not in header");
        class_idx = static_cast<int>(it - header.begin());
    }

    if (body.empty())
        throw ParseError(header_line, "empty dataset: no data rows");
    for (const Row& r : body)
        if (static_cast<int>(r.fields.size()) != ncols)
            throw ParseError(r.line, "ragged row: expected " + std::to_string(ncols) +
                                         " fields, got " + std::to_string(r.fields.size()));

    auto missing_at = [&](const Row& r, int c) { return r.fields[c].empty() && !r.quoted[c]; };

    // Column type inference. The class column is always nominal.
    std::vector<bool> numeric(ncols, true);
    for (int c = 0; c < ncols; ++c) {
        if (c == class_idx) {
            numeric[c] = false;
            continue;
        }
        for (const Row& r : body) {
            if (missing_at(r, c)) continue;
            if (!parse_number(r.fields[c])) {
                numeric[c] = false;
                break;
            }
        }
    }

    Dataset out;
    out.relation = "csv";
    std::vector<std::unordered_map<std::string, int>> dom_index(ncols);
    std::vector<int> attr_of_col(ncols, -1);
    for (int c = 0; c < ncols; ++c) {
        if (c == class_idx) continue;
        AttributeSchema a;
        a.name = header[c];
        a.kind = numeric[c] ? AttributeKind::Numeric : AttributeKind::Nominal;
        a.index = static_cast<int>(out.attributes.size());
        attr_of_col[c] = a.index;
        out.attributes.push_back(std::move(a));
    }
    out.class_attribute.name = header[class_idx];
    out.class_attribute.kind = AttributeKind::Nominal;
    out.class_attribute.index = static_cast<int>(out.attributes.size());

    auto intern = [&](int col, AttributeSchema& schema, const std::string& v) {
        auto [it, inserted] = dom_index[col].emplace(v, static_cast<int>(schema.values.size()));
        if (inserted) schema.values.push_back(v);
        return it->second;
    };

    for (const Row& r : body) {
        Instance inst;
        inst.id = static_cast<int>(out.instances.size());
        inst.values.reserve(ncols - 1);
        for (int c = 0; c < ncols; ++c) {
            if (c == class_idx) {
                if (missing_at(r, c)) throw ParseError(r.line, "missing class label");
                inst.label = intern(c, out.class_attribute, r.fields[c]);
                continue;
            }
            if (missing_at(r, c)) {
                inst.values.push_back(Value::missing());
            } else if (numeric[c]) {
                inst.values.push_back(Value::numeric(*parse_number(r.fields[c])));
            } else {
                inst.values.push_back(
                    Value::nominal(intern(c, out.attributes[attr_of_col[c]], r.fields[c])));
            }
        }
        out.instances.push_back(std::move(inst));
    }
    out.validate();
    return out;
}

Dataset parse_csv(std::string_view text, const std::optional<std::string>& class_column) {
    std::vector<Row> rows = read_csv_records(text);
    if (rows.empty()) throw ParseError(1, "empty dataset: no header row");
    std::vector<Row> body(rows.begin() + 1, rows.end());
    return build_from_rows(rows.front().fields, rows.front().line, body, class_column);
}

// --------------------------------------------------------------- ARFF -----

// Splits an ARFF value list / data line on commas, honoring '...' and "..."
// quoting with backslash escapes. Unquoted tokens are trimmed.
std::vector<Row> tokenize_arff_fields(const std::string& s, int line) {
    Row row;
    row.line = line;
    std::string field;
    bool quoted = false;
    std::size_t i = 0;
    const std::size_t n = s.size();
    while (true) {
        // skip leading blanks of a field
        while (i < n && (s[i] == ' ' || s[i] == '\t')) ++i;
        field.clear();
        quoted = false;
        if (i < n && (s[i] == '\'' || s[i] == '"')) {
            char q = s[i++];
            quoted = true;
            while (i < n && s[i] != q) {
                if (s[i] == '\\' && i + 1 < n) ++i;
                field += s[i++];
            }
            if (i >= n) throw ParseError(line, "unterminated quoted value");
            ++i;  // closing quote
            while (i < n && (s[i] == ' ' || s[i] == '\t')) ++i;
            if (i < n && s[i] != ',')
                throw ParseError(line, "unexpected characters after quoted value");
        } else {
            std::size_t start = i;
            while (i < n && s[i] != ',') ++i;
            field = trim(s.substr(start, i - start));
        }
        row.fields.push_back(field);
        row.quoted.push_back(quoted);
        if (i >= n) break;
        ++i;  // consume comma
    }
    return {row};
}

// Reads one possibly-quoted token from `s` starting at `pos`.
std::string read_arff_token(const std::string& s, std::size_t& pos, int line) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos >= s.size()) throw ParseError(line, "unexpected end of line");
    std::string tok;
    if (s[pos] == '\'' || s[pos] == '"') {
        char q = s[pos++];
        while (pos < s.size() && s[pos] != q) {
            if (s[pos] == '\\' && pos + 1 < s.size()) ++pos;
            tok += s[pos++];
        }
        if (pos >= s.size()) throw ParseError(line, "unterminated quoted token");
        ++pos;
    } else {
        while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos]))) tok += s[pos++];
    }
    return tok;
}

Dataset parse_arff(std::string_view text, const std::optional<std::string>& class_column) {
    struct RawAttr {
        AttributeSchema schema;
        int line;
    };
    std::vector<RawAttr> attrs;
    std::string relation = "data";
    bool in_data = false;
    int data_line = 0;

    std::vector<Row> body;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        std::string t = trim(raw);
        if (t.empty() || t[0] == '%') continue;
        if (!in_data) {
            std::string low = lower(t);
            if (low.rfind("@relation", 0) == 0) {
                std::size_t pos = 9;
                relation = read_arff_token(t, pos, line);
            } else if (low.rfind("@attribute", 0) == 0) {
                std::size_t pos = 10;
                RawAttr ra;
                ra.line = line;
                ra.schema.name = read_arff_token(t, pos, line);
                while (pos < t.size() && std::isspace(static_cast<unsigned char>(t[pos]))) ++pos;
                if (pos >= t.size()) throw ParseError(line, "@attribute without a type");
                if (t[pos] == '{') {
                    std::size_t close = t.rfind('}');
                    if (close == std::string::npos || close <= pos)
                        throw ParseError(line, "unterminated nominal domain");
                    ra.schema.kind = AttributeKind::Nominal;
                    std::string inner = t.substr(pos + 1, close - pos - 1);
                    if (trim(inner).empty())
                        throw ParseError(line, "empty nominal domain");
                    for (const auto& f : tokenize_arff_fields(inner, line).front().fields)
                        ra.schema.values.push_back(f);
                } else {
                    std::string ty = lower(trim(t.substr(pos)));
                    if (ty == "numeric" || ty == "real" || ty == "integer") {
                        ra.schema.kind = AttributeKind::Numeric;
                    } else {
                        throw ParseError(line, "unsupported attribute type '" + ty + "'");
                    }
                }
                attrs.push_back(std::move(ra));
            } else if (low.rfind("@data", 0) == 0) {
                if (attrs.empty()) throw ParseError(line, "@data before any @attribute");
                in_data = true;
                data_line = line;
            } else {
                throw ParseError(line, "malformed header line: '" + t + "'");
            }
        } else {
            body.push_back(tokenize_arff_fields(t, line).front());
        }
    }
    if (!in_data) throw ParseError(line == 0 ? 1 : line, "missing @data section");
    if (body.empty()) throw ParseError(data_line, "empty dataset: no data rows");

    const int ncols = static_cast<int>(attrs.size());
    int class_idx = ncols - 1;
    if (class_column) {
        class_idx = -1;
        for (int i = 0; i < ncols; ++i)
            if (attrs[i].schema.name == *class_column) class_idx = i;
        if (class_idx < 0)
            throw ParseError(1, "class column '" + *class_column + "' not declared");
    }
    if (attrs[class_idx].schema.kind != AttributeKind::Nominal)
        throw ParseError(attrs[class_idx].line, "class attribute must be nominal");

    Dataset out;
    out.relation = relation;
    std::vector<int> attr_of_col(ncols, -1);
    for (int c = 0; c < ncols; ++c) {
        if (c == class_idx) continue;
        AttributeSchema a = attrs[c].schema;
        a.index = static_cast<int>(out.attributes.size());
        attr_of_col[c] = a.index;
        out.attributes.push_back(std::move(a));
    }
    out.class_attribute = attrs[class_idx].schema;
    out.class_attribute.index = static_cast<int>(out.attributes.size());

    std::vector<std::unordered_map<std::string, int>> dom(ncols);
    for (int c = 0; c < ncols; ++c) {
        const auto& sc = attrs[c].schema;
        if (sc.kind == AttributeKind::Nominal)
            for (std::size_t i = 0; i < sc.values.size(); ++i)
                dom[c].emplace(sc.values[i], static_cast<int>(i));
    }

    for (const Row& r : body) {
        if (static_cast<int>(r.fields.size()) != ncols)
            throw ParseError(r.line, "ragged row: expected " + std::to_string(ncols) +
                                         " fields, got " + std::to_string(r.fields.size()));
        Instance inst;
        inst.id = static_cast<int>(out.instances.size());
        for (int c = 0; c < ncols; ++c) {
            const std::string& f = r.fields[c];
            const bool missing = !r.quoted[c] && f == "?";
            if (c == class_idx) {
                if (missing) throw ParseError(r.line, "missing class label");
                auto it = dom[c].find(f);
                if (it == dom[c].end())
                    throw ParseError(r.line, "unknown class value '" + f + "'");
                inst.label = it->second;
                continue;
            }
            if (missing) {
                inst.values.push_back(Value::missing());
            } else if (attrs[c].schema.kind == AttributeKind::Numeric) {
                auto num = parse_number(f);
                if (!num) throw ParseError(r.line, "invalid numeric value '" + f + "'");
                inst.values.push_back(Value::numeric(*num));
            } else {
                auto it = dom[c].find(f);
                if (it == dom[c].end())
                    throw ParseError(r.line, "unknown nominal value '" + f + "' for attribute '" +
                                                 attrs[c].schema.name + "'");
                inst.values.push_back(Value::nominal(it->second));
            }
        }
        out.instances.push_back(std::move(inst));
    }
    out.validate();
    return out;
}

// ------------------------------------------------------------- writers ----

bool csv_needs_quotes(const std::string& s) {
    return s.find_first_of(",\"\r\n") != std::string::npos;
}

std::string csv_quote(const std::string& s) {
    if (!csv_needs_quotes(s) && !s.empty()) return s;
    if (s.empty()) return "\"\"";  // distinguish empty value from missing
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

bool arff_needs_quotes(const std::string& s) {
    if (s.empty() || s == "?") return true;
    return s.find_first_of(" \t,{}%'\"\\") != std::string::npos;
}

std::string arff_quote(const std::string& s) {
    if (!arff_needs_quotes(s)) return s;
    std::string out = "'";
    for (char c : s) {
        if (c == '\'' || c == '\\') out += '\\';
        out += c;
    }
    out += '\'';
    return out;
}

void write_arff(const Dataset& d, std::string& out) {
    out += "@relation " + arff_quote(d.relation) + "\n\n";
    auto emit_attr = [&](const AttributeSchema& a) {
        out += "@attribute " + arff_quote(a.name) + " ";
        if (a.is_numeric()) {
            out += "numeric";
        } else {
            out += "{";
            for (std::size_t i = 0; i < a.values.size(); ++i) {
                if (i) out += ",";
                out += arff_quote(a.values[i]);
            }
            out += "}";
        }
        out += "\n";
    };
    for (const auto& a : d.attributes) emit_attr(a);
    emit_attr(d.class_attribute);
    out += "\n@data\n";
    for (const auto& inst : d.instances) {
        for (std::size_t a = 0; a < d.attributes.size(); ++a) {
            const Value& v = inst.values[a];
            if (v.is_missing())
                out += "?";
            else if (d.attributes[a].is_numeric())
                out += format_double(v.num());
            else
                out += arff_quote(d.attributes[a].values[v.sym()]);
            out += ",";
        }
        out += arff_quote(d.class_attribute.values[inst.label]);
        out += "\n";
    }
}

void write_csv(const Dataset& d, std::string& out) {
    for (const auto& a : d.attributes) out += csv_quote(a.name) + ",";
    out += csv_quote(d.class_attribute.name) + "\n";
    for (const auto& inst : d.instances) {
        for (std::size_t a = 0; a < d.attributes.size(); ++a) {
            const Value& v = inst.values[a];
            if (!v.is_missing()) {
                if (d.attributes[a].is_numeric())
                    out += format_double(v.num());
                else
                    out += csv_quote(d.attributes[a].values[v.sym()]);
            }
            out += ",";
        }
        out += csv_quote(d.class_attribute.values[inst.label]);
        out += "\n";
    }
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

Dataset parse_dataset(std::string_view text, Format format,
                      const std::optional<std::string>& class_column) {
    return format == Format::Arff ? parse_arff(text, class_column)
                                  : parse_csv(text, class_column);
}

Dataset parse_dataset_file(const std::string& path, std::optional<Format> format,
                           const std::optional<std::string>& class_column) {
    if (!format) {
        auto dot = path.rfind('.');
        std::string ext = dot == std::string::npos ? "" : lower(path.substr(dot + 1));
        if (ext == "arff")
            format = Format::Arff;
        else if (ext == "csv")
            format = Format::Csv;
        else
            throw std::invalid_argument("cannot infer format from '" + path +
                                        "'; pass --format arff|csv");
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    Dataset d = parse_dataset(ss.str(), *format, class_column);
    auto slash = path.find_last_of("/\\");
    auto base = slash == std::string::npos ? path : path.substr(slash + 1);
    auto dot = base.rfind('.');
    d.relation = dot == std::string::npos ? base : base.substr(0, dot);
    return d;
}

std::string write_dataset(const Dataset& data, Format format) {
    std::string out;
    if (format == Format::Arff)
        write_arff(data, out);
    else
        write_csv(data, out);
    return out;
}

}  // namespace cobfc
