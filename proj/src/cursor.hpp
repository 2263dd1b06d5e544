#pragma once

// Character cursor shared by the hand-written parsers. Tracks line/column and
// knows how to skip blanks, '#' comments and (inside brackets) newlines.

#include <string>
#include <string_view>
#include <vector>

#include "vtt/error.hpp"
#include "vtt/model.hpp"

namespace vtt::detail {

class Cursor {
 public:
  Cursor(std::string_view text, std::string path = {}, int line = 1, int column = 1)
      : text_(text), path_(std::move(path)), line_(line), column_(column) {}

  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  std::string_view rest() const { return text_.substr(pos_); }
  std::size_t offset() const { return pos_; }

  char advance();
  bool starts_with(std::string_view s) const { return rest().substr(0, s.size()) == s; }

  /// Skips spaces and tabs; newlines too when `newlines` is set.
  void skip_blanks(bool newlines = false);
  /// Like skip_blanks(true) but also skips '#' comments.
  void skip_blanks_and_comments();
  bool at_line_end() const { return at_end() || peek() == '\n' || peek() == '\r'; }

  bool accept(char c);
  bool accept(std::string_view s);
  void expect(char c, std::string_view what = {});
  void expect(std::string_view s, std::string_view what = {});

  static bool ident_start(char c);
  static bool ident_char(char c);
  bool at_identifier() const { return ident_start(peek()); }
  std::string identifier(std::string_view what = "identifier");
  /// Identifier-like word that may also start with a digit (used for tags).
  std::string word(std::string_view what = "word");
  double number(std::string_view what = "number");
  bool at_number() const;
  /// Double-quoted string with \" and \\ escapes.
  std::string quoted(std::string_view what = "quoted string");
  bool at_quoted() const { return peek() == '"'; }

  SourcePos position() const { return {path_, line_, column_}; }
  [[noreturn]] void fail(const std::string& message) const;
  [[noreturn]] void fail_expected(std::string_view what) const;

 private:
  std::string_view text_;
  std::string path_;
  std::size_t pos_ = 0;
  int line_;
  int column_;
};

// Pieces shared by the literal/glyph parsers and the document parser.
Literal read_literal(Cursor& cur);
std::vector<Literal> read_literal_list(Cursor& cur);
Stroke read_stroke(Cursor& cur);
std::vector<Stroke> read_stroke_list(Cursor& cur);
StrokeEdit read_edit(Cursor& cur);
std::vector<StrokeEdit> read_edit_list(Cursor& cur);
Region read_region(Cursor& cur);
Glyph read_glyph(Cursor& cur);
/// Reads a glyph literal when `radical` (already consumed) is followed by '('.
Glyph read_glyph_after_radical(Cursor& cur, std::string radical);

std::string escape_quoted(std::string_view text);

}  // namespace vtt::detail
