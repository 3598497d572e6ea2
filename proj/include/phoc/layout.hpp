#pragma once

#include <string>
#include <vector>

namespace phoc {

// One symbol occurrence: an opaque label with a center point and extent.
struct SymbolPlacement {
  std::string label;
  double cx = 0.0;
  double cy = 0.0;
  double w = 0.0;
  double h = 0.0;

  double xLo() const { return cx - w / 2.0; }
  double xHi() const { return cx + w / 2.0; }
  double yLo() const { return cy - h / 2.0; }
  double yHi() const { return cy + h / 2.0; }
};

struct FormulaLayout {
  std::string id;
  std::vector<SymbolPlacement> symbols;
};

// Axis-aligned box with strictly positive extent in both dimensions.
struct BoundingBox {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 1.0;
  double y1 = 1.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double centerX() const { return (x0 + x1) / 2.0; }
  double centerY() const { return (y0 + y1) / 2.0; }
};

// Tight hull of all symbol extents. A dimension with zero extent is
// expanded symmetrically to one unit so region fractions stay defined.
BoundingBox bounding_box(const FormulaLayout& f);

// Token i occupies the unit box [i, i+1) x [0, 1).
FormulaLayout synthesize_linear_layout(const std::vector<std::string>& tokens);

// Reflects every symbol center about the bounding-box x-midline.
FormulaLayout mirror_layout(const FormulaLayout& f);

// Line-delimited JSON records with fields "id" and "symbols".
std::vector<FormulaLayout> load_corpus(const std::string& path);

// Same format; records may carry "qid" in place of "id".
std::vector<FormulaLayout> load_topics(const std::string& path);

}  // namespace phoc
