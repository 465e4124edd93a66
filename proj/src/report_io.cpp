#include "magbloch/report_io.hpp"

#include "magbloch/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

namespace magbloch {

std::string format_number(double x)
{
    if (!std::isfinite(x)) throw NumericError("non-finite value in output");
    if (x == 0.0) x = 0.0; // drop the sign of -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    std::string s(buf);
    std::replace(s.begin(), s.end(), ',', '.');
    return s;
}

std::string escape_json(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    return out;
}

void JsonWriter::separator()
{
    if (after_key_) {
        after_key_ = false;
        return;
    }
    if (!first_.empty()) {
        if (!first_.back()) out_ += ',';
        first_.back() = false;
    }
}

JsonWriter& JsonWriter::begin_object()
{
    separator();
    out_ += '{';
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_object()
{
    first_.pop_back();
    out_ += '}';
    return *this;
}

JsonWriter& JsonWriter::begin_array()
{
    separator();
    out_ += '[';
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_array()
{
    first_.pop_back();
    out_ += ']';
    return *this;
}

JsonWriter& JsonWriter::key(const std::string& k)
{
    separator();
    out_ += '"' + escape_json(k) + "\":";
    after_key_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(double x)
{
    separator();
    out_ += format_number(x);
    return *this;
}

JsonWriter& JsonWriter::value(long x)
{
    separator();
    out_ += std::to_string(x);
    return *this;
}

JsonWriter& JsonWriter::value(bool b)
{
    separator();
    out_ += b ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::value(const std::string& s)
{
    separator();
    out_ += '"' + escape_json(s) + '"';
    return *this;
}

JsonWriter& JsonWriter::numbers(const std::vector<double>& v)
{
    begin_array();
    for (double x : v) value(x);
    return end_array();
}

std::string butterfly_csv(const std::vector<SpectrumReport>& reports)
{
    std::vector<const SpectrumReport*> order;
    for (const auto& r : reports) order.push_back(&r);
    std::stable_sort(order.begin(), order.end(), [](const SpectrumReport* a, const SpectrumReport* b) {
        if (a->flux.q != b->flux.q) return a->flux.q < b->flux.q;
        return a->flux.p < b->flux.p;
    });
    std::string out = "p,q,theta,band_index,E_min,E_max\n";
    for (const SpectrumReport* r : order)
        for (std::size_t i = 0; i < r->bands.size(); ++i)
            out += std::to_string(r->flux.p) + ',' + std::to_string(r->flux.q) + ',' +
                   format_number(r->flux.theta()) + ',' + std::to_string(i) + ',' +
                   format_number(r->bands[i].lo) + ',' + format_number(r->bands[i].hi) + '\n';
    return out;
}

void write_spectrum_report(JsonWriter& w, const SpectrumReport& r)
{
    w.begin_object();
    w.key("p").value(r.flux.p).key("q").value(r.flux.q).key("theta").value(r.flux.theta());
    w.key("grid").begin_array().value(r.grid1).value(r.grid2).end_array();
    w.key("tol_band").value(r.tol_band);
    w.key("bands").begin_array();
    for (const auto& b : r.bands) w.begin_array().value(b.lo).value(b.hi).end_array();
    w.end_array();
    w.key("raw_bands").begin_array();
    for (const auto& b : r.raw_bands) w.begin_array().value(b.lo).value(b.hi).end_array();
    w.end_array();
    w.end_object();
}

std::string spectrum_reports_json(const std::vector<SpectrumReport>& reports)
{
    std::vector<const SpectrumReport*> order;
    for (const auto& r : reports) order.push_back(&r);
    std::stable_sort(order.begin(), order.end(), [](const SpectrumReport* a, const SpectrumReport* b) {
        if (a->flux.q != b->flux.q) return a->flux.q < b->flux.q;
        return a->flux.p < b->flux.p;
    });
    JsonWriter w;
    w.begin_object().key("reports").begin_array();
    for (const SpectrumReport* r : order) write_spectrum_report(w, *r);
    w.end_array().end_object();
    return w.str();
}

void write_output(const std::string& path, const std::string& content)
{
    if (path.empty() || path == "-") {
        std::cout << content;
        std::cout.flush();
        if (!std::cout) throw ResourceError("failed writing to stdout");
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ResourceError("cannot open output file '" + path + "'");
    out << content;
    if (!out) throw ResourceError("failed writing output file '" + path + "'");
}

} // namespace magbloch
