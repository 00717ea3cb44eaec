// Maps JSON pointers to source lines. nlohmann/json keeps no positions, so
// error messages for schema violations rescan the (already valid) text.

#include "tlo/config.hpp"

#include <cctype>
#include <map>

namespace tlo {

namespace {

std::string escape_token(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~')
      out += "~0";
    else if (c == '/')
      out += "~1";
    else
      out += c;
  }
  return out;
}

class Scanner {
public:
  explicit Scanner(std::string_view text) : text_(text) {}

  std::map<std::string, int> run() {
    value("");
    return lines_;
  }

private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  bool at(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

  std::string string() {
    std::string out;
    ++pos_; // opening quote
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) {
        ++pos_;
        const char e = text_[pos_];
        out += e == 'n' ? '\n' : e == 't' ? '\t' : e;
      } else {
        out += text_[pos_];
      }
      ++pos_;
    }
    ++pos_; // closing quote
    return out;
  }

  void value(const std::string& path) {
    skip_ws();
    lines_.emplace(path, line_);
    if (pos_ >= text_.size()) return;
    if (at('{')) {
      ++pos_;
      skip_ws();
      while (pos_ < text_.size() && !at('}')) {
        skip_ws();
        if (!at('"')) break;
        const std::string key = string();
        skip_ws();
        if (at(':')) ++pos_;
        value(path + "/" + escape_token(key));
        skip_ws();
        if (at(',')) ++pos_;
        skip_ws();
      }
      ++pos_;
    } else if (at('[')) {
      ++pos_;
      skip_ws();
      for (int index = 0; pos_ < text_.size() && !at(']'); ++index) {
        value(path + "/" + std::to_string(index));
        skip_ws();
        if (at(',')) ++pos_;
        skip_ws();
      }
      ++pos_;
    } else if (at('"')) {
      string();
    } else {
      while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && !at(',') && !at(']') &&
             !at('}'))
        ++pos_;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  std::map<std::string, int> lines_;
};

} // namespace

int locate_line(std::string_view text, const std::string& pointer) {
  const auto lines = Scanner(text).run();
  std::string p = pointer;
  while (true) {
    if (auto it = lines.find(p); it != lines.end()) return it->second;
    const auto slash = p.rfind('/');
    if (slash == std::string::npos) return 1;
    p.erase(slash);
  }
}

} // namespace tlo
