#include "hopfdiag/render.hpp"

#include <sstream>

namespace hopfdiag {

std::string render_text(const Diagram& d) {
  std::ostringstream os;
  os << "dom " << d.dom << " -> cod " << d.cod() << "\n";
  for (std::size_t l = 0; l < d.layers.size(); ++l) {
    os << l << ": ";
    bool first = true;
    for (const Cell& c : d.layers[l]) {
      if (!first) os << ' ';
      first = false;
      if (c.is_wire()) os << '|';
      else os << gen_info(c.gen_id()).name;
    }
    if (d.layers[l].empty()) os << "(empty)";
    os << "\n";
  }
  if (d.layers.empty()) os << "(identity)\n";
  return os.str();
}

namespace {

constexpr int kCol = 36;   // column width
constexpr int kRow = 44;   // layer height
constexpr int kBox = 26;

void strand(std::ostringstream& os, double x0, double y0, double x1, double y1) {
  os << "<path d='M" << x0 << " " << y0 << " C" << x0 << " " << (y0 + y1) / 2 << " "
     << x1 << " " << (y0 + y1) / 2 << " " << x1 << " " << y1
     << "' fill='none' stroke='black' stroke-width='1.4'/>\n";
}

}  // namespace

std::string render_svg(const Diagram& d) {
  // Track wire x positions per boundary; boxes centered over their inputs.
  std::vector<int> widths = d.boundary_widths();
  int max_w = 0;
  for (int w : widths) max_w = std::max(max_w, w);
  int height = static_cast<int>(d.layers.size()) * kRow + 2 * kRow / 2;
  int width = std::max(1, max_w) * kCol + kCol;

  std::ostringstream os;
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='"
     << height << "' viewBox='0 0 " << width << " " << height << "'>\n";
  os << "<rect width='100%' height='100%' fill='white'/>\n";

  auto xpos = [&](int col) { return kCol / 2.0 + kCol * col + kCol / 2.0; };
  double y = height - kRow / 2.0;  // domain at the bottom

  std::vector<double> xs;
  for (int i = 0; i < d.dom; ++i) xs.push_back(xpos(i));

  for (const auto& layer : d.layers) {
    std::vector<double> next;
    double ytop = y - kRow;
    int col = 0;
    std::size_t wi = 0;
    for (const Cell& c : layer) {
      if (c.is_wire()) {
        double x = xs[wi++];
        double nx = xpos(col++);
        strand(os, x, y, nx, ytop);
        next.push_back(nx);
        continue;
      }
      const GenInfo& gi = gen_info(c.gen_id());
      double left = xpos(col);
      double right = xpos(col + std::max(gi.dom, gi.cod) - 1);
      double cx = (left + right) / 2;
      if ((c.gen_id() == GenId::Br || c.gen_id() == GenId::BrInv) && gi.dom == 2) {
        // Crossing with an over/under gap instead of a box.
        double x0 = xs[wi], x1 = xs[wi + 1];
        double n0 = xpos(col), n1 = xpos(col + 1);
        bool over_left = c.gen_id() == GenId::Br;
        if (over_left) {
          strand(os, x1, y, n0, ytop);
          os << "<path d='M" << x0 << " " << y << " C" << x0 << " " << (y + ytop) / 2
             << " " << n1 << " " << (y + ytop) / 2 << " " << n1 << " " << ytop
             << "' fill='none' stroke='white' stroke-width='6'/>\n";
          strand(os, x0, y, n1, ytop);
        } else {
          strand(os, x0, y, n1, ytop);
          os << "<path d='M" << x1 << " " << y << " C" << x1 << " " << (y + ytop) / 2
             << " " << n0 << " " << (y + ytop) / 2 << " " << n0 << " " << ytop
             << "' fill='none' stroke='white' stroke-width='6'/>\n";
          strand(os, x1, y, n0, ytop);
        }
        wi += 2;
        next.push_back(xpos(col));
        next.push_back(xpos(col + 1));
        col += 2;
        continue;
      }
      double ybox0 = y - (kRow - kBox) / 2.0;
      double ybox1 = ybox0 - kBox;
      for (int k = 0; k < gi.dom; ++k)
        strand(os, xs[wi + k], y, cx - (gi.dom - 1) * 6.0 + 12.0 * k, ybox0);
      wi += gi.dom;
      for (int k = 0; k < gi.cod; ++k) {
        double nx = xpos(col + k);
        strand(os, cx - (gi.cod - 1) * 6.0 + 12.0 * k, ybox1, nx, ytop);
        next.push_back(nx);
      }
      os << "<rect x='" << cx - kBox << "' y='" << ybox1 << "' width='" << 2 * kBox
         << "' height='" << kBox << "' rx='4' fill='#eef' stroke='black'/>\n";
      os << "<text x='" << cx << "' y='" << ybox1 + kBox / 2.0 + 4
         << "' font-family='monospace' font-size='12' text-anchor='middle'>"
         << gi.name << "</text>\n";
      col += gi.cod;
    }
    xs = std::move(next);
    y = ytop;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace hopfdiag
