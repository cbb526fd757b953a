#include "core/quadrature.hpp"

#include <cmath>

namespace ppeflow {

namespace {

void add_centroid(TriangleQuadrature& q, double w) {
  q.points.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
  q.weights.push_back(w);
}

// Orbit (a, a, 1-2a) and cyclic permutations.
void add_orbit3(TriangleQuadrature& q, double a, double w) {
  const double c = 1.0 - 2.0 * a;
  q.points.push_back({a, a, c});
  q.points.push_back({a, c, a});
  q.points.push_back({c, a, a});
  for (int i = 0; i < 3; ++i) q.weights.push_back(w);
}

// Orbit (a, b, 1-a-b) and all six permutations.
void add_orbit6(TriangleQuadrature& q, double a, double b, double w) {
  const double c = 1.0 - a - b;
  q.points.push_back({a, b, c});
  q.points.push_back({a, c, b});
  q.points.push_back({b, a, c});
  q.points.push_back({b, c, a});
  q.points.push_back({c, a, b});
  q.points.push_back({c, b, a});
  for (int i = 0; i < 6; ++i) q.weights.push_back(w);
}

// Symmetric Gaussian rules on the triangle (Dunavant 1985). Weights below are
// given relative to unit total measure and scaled by the reference area 1/2.
// Degrees 3, 7 and 11 are served by the next higher rule: the corresponding
// Dunavant rules carry negative weights or points outside the triangle.
TriangleQuadrature build(int degree) {
  TriangleQuadrature q;
  q.degree = degree;
  const double s = 0.5;
  switch (degree) {
    case 1:
      add_centroid(q, 1.0 * s);
      break;
    case 2:
      add_orbit3(q, 1.0 / 6.0, s / 3.0);
      break;
    case 3:
    case 4:
      add_orbit3(q, 0.44594849091596488631832925388305, 0.22338158967801146569500700843312 * s);
      add_orbit3(q, 0.09157621350977074345957146340220, 0.10995174365532186763832632490021 * s);
      break;
    case 5:
      add_centroid(q, 0.225 * s);
      add_orbit3(q, 0.47014206410511508977044120951345, 0.13239415278850618073764938783315 * s);
      add_orbit3(q, 0.10128650732345633880098736191512, 0.12593918054482715259568394550018 * s);
      break;
    case 6:
      add_orbit3(q, 0.24928674517091042129163855310702, 0.11678627572637936602528961138558 * s);
      add_orbit3(q, 0.06308901449150222834033160287082, 0.05084490637020681692093680910686 * s);
      add_orbit6(q, 0.31035245103378440541660773395655, 0.63650249912139864723014259441205,
                 0.08285107561837357519355345642044 * s);
      break;
    case 7:
    case 8:
      add_centroid(q, 0.14431560767778716825109111048906 * s);
      add_orbit3(q, 0.17056930775176020662229350149146, 0.10321737053471825028179155029212 * s);
      add_orbit3(q, 0.05054722831703097545842355059660, 0.03245849762319808031092592834178 * s);
      add_orbit3(q, 0.45929258829272315602881551449417, 0.09509163426728462479389610438858 * s);
      add_orbit6(q, 0.26311282963463811342178578628464, 0.72849239295540428124100037917606,
                 0.02723031417443499426484469007390 * s);
      break;
    case 9:
      add_centroid(q, 0.09713579628279609890744676309485 * s);
      add_orbit3(q, 0.48968251919873762778370692483619, 0.03133470022713983234393199080984 * s);
      add_orbit3(q, 0.43708959149293663726993036443535, 0.07782754100477543338465495857972 * s);
      add_orbit3(q, 0.18820353561903273024096128046733, 0.07964773892720910288013526957424 * s);
      add_orbit3(q, 0.04472951339445297061024247196780, 0.02557767565869810438673914467637 * s);
      add_orbit6(q, 0.22196298916076569567510252769319, 0.74119859878449802069007987352342,
                 0.04328353937728937728937728937729 * s);
      break;
    case 10:
      add_centroid(q, 0.090817990382754 * s);
      add_orbit3(q, 0.485577633383657, 0.036725957756467 * s);
      add_orbit3(q, 0.109481575485037, 0.045321059435528 * s);
      add_orbit6(q, 0.141707219414880, 0.307939838764121, 0.072757916845420 * s);
      add_orbit6(q, 0.025003534762686, 0.246672560639903, 0.028327242531057 * s);
      add_orbit6(q, 0.009540815400299, 0.066803251012200, 0.009421666963733 * s);
      break;
    case 11:
    case 12:
      add_orbit3(q, 0.488217389773805, 0.025731066440455 * s);
      add_orbit3(q, 0.439724392294460, 0.043692544538038 * s);
      add_orbit3(q, 0.271210385012116, 0.062858224217885 * s);
      add_orbit3(q, 0.127576145541586, 0.034796112930709 * s);
      add_orbit3(q, 0.021317350453210, 0.006166261051559 * s);
      add_orbit6(q, 0.115343494534698, 0.275713269685514, 0.040371557766381 * s);
      add_orbit6(q, 0.022838332222257, 0.281325580989940, 0.022356773202303 * s);
      add_orbit6(q, 0.025734050548330, 0.116251915907597, 0.017316231108659 * s);
      break;
    default:
      throw InvalidArgument("triangle_quadrature: unsupported degree " + std::to_string(degree));
  }
  return q;
}

}  // namespace

TriangleQuadrature triangle_quadrature(int degree) {
  if (degree < 1 || degree > 12) {
    throw InvalidArgument("triangle_quadrature: unsupported degree " + std::to_string(degree));
  }
  return build(degree);
}

EdgeQuadrature edge_quadrature(int degree) {
  if (degree < 0) throw InvalidArgument("edge_quadrature: negative degree");
  const int n = degree / 2 + 1;  // n-point Gauss is exact to degree 2n-1

  // Golub-Welsch on the Jacobi matrix via Newton iteration on Legendre P_n.
  EdgeQuadrature q;
  q.degree = 2 * n - 1;
  q.points.resize(n);
  q.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Chebyshev initial guess, roots ordered increasing on [-1,1].
    double x = -std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p0 = 0.0, p1 = 0.0;
    for (int it = 0; it < 100; ++it) {
      p0 = 1.0;
      p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    p0 = 1.0;
    p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double dp = n * (x * p1 - p0) / (x * x - 1.0);
    q.points[i] = 0.5 * (x + 1.0);
    q.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);  // (2/((1-x^2)dp^2)) / 2
  }
  return q;
}

}  // namespace ppeflow
