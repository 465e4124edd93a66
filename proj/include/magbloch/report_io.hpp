#pragma once

#include "magbloch/quantize.hpp"

#include <string>
#include <vector>

namespace magbloch {

// %.17g with '.' as decimal separator regardless of locale.
std::string format_number(double x);

// Streaming JSON text with fixed number formatting.
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(const std::string& k);
    JsonWriter& value(double x);
    JsonWriter& value(long x);
    JsonWriter& value(int x) { return value(static_cast<long>(x)); }
    JsonWriter& value(bool b);
    JsonWriter& value(const std::string& s);
    JsonWriter& value(const char* s) { return value(std::string(s)); }
    JsonWriter& numbers(const std::vector<double>& v);
    std::string str() const { return out_ + "\n"; }

private:
    void separator();
    std::string out_;
    std::vector<bool> first_;
    bool after_key_ = false;
};

std::string escape_json(const std::string& s);

// Rows p,q,theta,band_index,E_min,E_max sorted by (q, p, band_index).
std::string butterfly_csv(const std::vector<SpectrumReport>& reports);
std::string spectrum_reports_json(const std::vector<SpectrumReport>& reports);
void write_spectrum_report(JsonWriter& w, const SpectrumReport& r);

// Writes to path, or stdout when empty.
void write_output(const std::string& path, const std::string& content);

} // namespace magbloch
