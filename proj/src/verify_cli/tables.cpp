#include "virasoro/annulus.hpp"
#include "virasoro/halfplane.hpp"
#include "virasoro/hydro.hpp"
#include "virasoro/verify.hpp"

#include <ostream>

namespace vir {

void write_annulus_table(std::ostream& out, double t, const std::vector<double>& points, double y_frac) {
  if (!(y_frac > 0 && y_frac < 1)) throw std::invalid_argument("annulus table: y_frac must lie in (0, 1)");
  ThetaContext ctx(t);
  out << "t,x,y,poisson,excursion,schwarzian,tan_dt,tan_dz1,tan_da1,tan_da2\n";
  double s = schwarzian_connection(ctx);
  auto old = out.precision(17);
  for (double x : points) {
    if (!(x > 0 && x < 1)) throw std::invalid_argument("annulus table: points must lie in (0, 1)");
    double y = y_frac * t / 2;
    AnnulusChart chart(t, {x}, 2);
    TangentCoords tc = tangent_coordinates(chart, -2);
    double row[] = {t, x, y, poisson_kernel(cplx(x, y), 0.0, ctx), excursion_kernel(x, 0.0, ctx), s, tc.dt,
                    tc.dz[0], tc.da[0], tc.da[1]};
    for (std::size_t i = 0; i < std::size(row); ++i) out << (i ? "," : "") << row[i] + 0.0;  // + 0.0 turns -0 into 0
    out << '\n';
  }
  out.precision(old);
}

std::string dump_operator(int n, int jet_order, int spectators, bool virasoro) {
  HalfPlaneChart ch = HalfPlaneChart::make(spectators, jet_order);
  return (virasoro ? virasoro_generator(ch, n) : witt_generator(ch, n)).to_string();
}

std::string dump_bb_operator(int n, int depth, int points, bool virasoro) {
  HydroChart ch = HydroChart::make(points, depth);
  return (virasoro ? bb_virasoro(ch, n) : bb_witt(ch, n)).to_string();
}

}  // namespace vir
