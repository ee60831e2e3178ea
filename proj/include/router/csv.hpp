#pragma once
#include <fstream>
#include <iomanip>
#include <locale>
#include <stdexcept>
#include <string>

namespace router {

// Deterministic CSV emission: classic locale, 17 significant digits, so the
// same numbers always produce the same bytes.
class CsvWriter {
public:
  CsvWriter(const std::string& path, const std::string& header) {
    f_.imbue(std::locale::classic());
    f_.open(path);
    if (!f_) throw std::runtime_error("csv: cannot open " + path);
    f_ << std::setprecision(17);
    f_ << header << '\n';
  }

  template <class... A>
  void row(const A&... a) {
    bool first = true;
    (put(first, a), ...);
    f_ << '\n';
  }

  void flush() { f_.flush(); }

private:
  void sep(bool& first) {
    if (!first) f_ << ',';
    first = false;
  }
  void put(bool& first, double v) { sep(first); f_ << v; }
  void put(bool& first, int v) { sep(first); f_ << v; }
  void put(bool& first, long v) { sep(first); f_ << v; }
  void put(bool& first, const std::string& s) { sep(first); f_ << s; }
  void put(bool& first, const char* s) { sep(first); f_ << s; }

  std::ofstream f_;
};

}
