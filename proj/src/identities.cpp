#include "genfib/identities.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace genfib {

const char* sym_name(Sym s) {
  switch (s) {
    case Sym::n: return "n";
    case Sym::m: return "m";
    case Sym::i: return "i";
    case Sym::j: return "j";
    case Sym::alpha: return "alpha";
    case Sym::t: return "t";
  }
  return "?";
}

namespace {

SideValues sv(Int lhs, Int rhs) { return SideValues{Rat(lhs), Rat(rhs), true, ""}; }
SideValues svr(Rat lhs, Rat rhs) { return SideValues{std::move(lhs), std::move(rhs), true, ""}; }

Int mod_pos(const Int& a, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Int factorial(long long n) {
  Int v;
  mpz_fac_ui(v.get_mpz_t(), static_cast<unsigned long>(n));
  return v;
}

std::vector<IdentityDef> build_registry() {
  std::vector<IdentityDef> reg;
  auto add = [&reg](IdentityDef d) { reg.push_back(std::move(d)); };
  using B = const Binding&;
  using T = const SeqTable&;

  add({"f-product-shift",
       "F(a+n+i)*F(a+n+j) - (-1)^(a+i+j)*F(n-i)*F(n-j) = F(a+2n)*F(a+i+j)",
       "",
       {{Sym::alpha, 1, 4}, {Sym::n, -60, 60}, {Sym::i, -3, 3}, {Sym::j, -3, 3}},
       {},
       [](T t, B b, Form) {
         long long a = b.get(Sym::alpha), n = b.get(Sym::n), i = b.get(Sym::i),
                   j = b.get(Sym::j);
         Int lhs = t.f(a + n + i) * t.f(a + n + j) - sign_pow(a + i + j) * t.f(n - i) * t.f(n - j);
         return sv(lhs, t.f(a + 2 * n) * t.f(a + i + j));
       },
       nullptr,
       0});

  add({"l-product-shift",
       "L(a+n+i)*L(a+n+j) - (-1)^(a+i+j)*(k^2+4)*L(n-i)*L(n-j) = L(a+2n)*L(a+i+j)",
       "L(a+n+i)*L(a+n+j) + (-1)^(a+i+j)*(k^2+4)*F(n-i)*F(n-j) = L(a+2n)*L(a+i+j)",
       {{Sym::alpha, 1, 4}, {Sym::n, -60, 60}, {Sym::i, -3, 3}, {Sym::j, -3, 3}},
       {},
       [](T t, B b, Form form) {
         long long a = b.get(Sym::alpha), n = b.get(Sym::n), i = b.get(Sym::i),
                   j = b.get(Sym::j);
         const Int& d = t.params().dz;
         Int lhs = form == Form::verbatim
                       ? Int(t.l(a + n + i) * t.l(a + n + j) -
                             sign_pow(a + i + j) * d * t.l(n - i) * t.l(n - j))
                       : Int(t.l(a + n + i) * t.l(a + n + j) +
                             sign_pow(a + i + j) * d * t.f(n - i) * t.f(n - j));
         return sv(lhs, t.l(a + 2 * n) * t.l(a + i + j));
       },
       nullptr,
       0});

  add({"f-product-split",
       "F(n+i)*F(n+j) - F(n)*F(n+i+j) = (-1)^n*F(i)*F(j)",
       "",
       {{Sym::n, -60, 60}, {Sym::i, -3, 3}, {Sym::j, -3, 3}},
       {},
       [](T t, B b, Form) {
         long long n = b.get(Sym::n), i = b.get(Sym::i), j = b.get(Sym::j);
         Int lhs = t.f(n + i) * t.f(n + j) - t.f(n) * t.f(n + i + j);
         return sv(lhs, sign_pow(n) * t.f(i) * t.f(j));
       },
       nullptr,
       0});

  add({"l-product-split",
       "L(n+i)*L(n+j) - L(n)*L(n+i+j) = (-1)^(n+1)*(k^2+4)*F(i)*F(j)",
       "",
       {{Sym::n, -60, 60}, {Sym::i, -3, 3}, {Sym::j, -3, 3}},
       {},
       [](T t, B b, Form) {
         long long n = b.get(Sym::n), i = b.get(Sym::i), j = b.get(Sym::j);
         Int lhs = t.l(n + i) * t.l(n + j) - t.l(n) * t.l(n + i + j);
         return sv(lhs, sign_pow(n + 1) * t.params().dz * t.f(i) * t.f(j));
       },
       nullptr,
       0});

  add({"owings-congruence",
       "F(2n+1)^2 + k^2 == 0 (mod F(2n-1)) and F(2n-1)^2 + k^2 == 0 (mod F(2n+1))",
       "",
       {{Sym::n, 1, 50}},
       {},
       [](T t, B b, Form) {
         long long n = b.get(Sym::n);
         Int k2 = t.params().kz * t.params().kz;
         Int r1 = mod_pos(t.f(2 * n + 1) * t.f(2 * n + 1) + k2, t.f(2 * n - 1));
         Int r2 = mod_pos(t.f(2 * n - 1) * t.f(2 * n - 1) + k2, t.f(2 * n + 1));
         return sv(r1 + r2, Int(0));
       },
       nullptr,
       0});

  add({"catalan",
       "F(n+m)*F(n-m) - F(n)^2 = (-1)^(n+m+1)*F(m)^2",
       "",
       {{Sym::n, -60, 60}, {Sym::m, 0, 10}},
       {},
       [](T t, B b, Form) {
         long long n = b.get(Sym::n), m = b.get(Sym::m);
         Int lhs = t.f(n + m) * t.f(n - m) - t.f(n) * t.f(n);
         return sv(lhs, sign_pow(n + m + 1) * t.f(m) * t.f(m));
       },
       nullptr,
       0});

  add({"cassini",
       "F(n+1)*F(n-1) - F(n)^2 = (-1)^n",
       "",
       {{Sym::n, -60, 60}},
       {},
       [](T t, B b, Form) {
         long long n = b.get(Sym::n);
         return sv(t.f(n + 1) * t.f(n - 1) - t.f(n) * t.f(n), sign_pow(n));
       },
       nullptr,
       0});

  add({"sum-squares",
       "sum_(j=1..n) F(j)^2 = k*F(n)*F(n+1)",
       "k*sum_(j=1..n) F(j)^2 = F(n)*F(n+1)",
       {{Sym::n, 1, 60}},
       {},
       [](T t, B b, Form form) {
         long long n = b.get(Sym::n);
         Int total = 0;
         for (long long j = 1; j <= n; ++j) total += t.f(j) * t.f(j);
         const Int& k = t.params().kz;
         if (form == Form::verbatim) return sv(total, k * t.f(n) * t.f(n + 1));
         return sv(k * total, t.f(n) * t.f(n + 1));
       },
       nullptr,
       0});

  add({"sum-consecutive-squares",
       "F(n+1)^2 + F(n)^2 = F(2n+1)",
       "",
       {{Sym::n, -60, 60}},
       {},
       [](T t, B b, Form) {
         long long n = b.get(Sym::n);
         return sv(t.f(n + 1) * t.f(n + 1) + t.f(n) * t.f(n), t.f(2 * n + 1));
       },
       nullptr,
       0});

  add({"diff-squares",
       "F(n+1)^2 - F(n)^2 = k*F(2n+1)",
       "F(n+1)^2 - F(n-1)^2 = k*F(2n)",
       {{Sym::n, -60, 60}},
       {},
       [](T t, B b, Form form) {
         long long n = b.get(Sym::n);
         const Int& k = t.params().kz;
         if (form == Form::verbatim)
           return sv(t.f(n + 1) * t.f(n + 1) - t.f(n) * t.f(n), k * t.f(2 * n + 1));
         return sv(t.f(n + 1) * t.f(n + 1) - t.f(n - 1) * t.f(n - 1), k * t.f(2 * n));
       },
       nullptr,
       0});

  add({"lucas-fib-bridge",
       "L(m) = F(m+1) + F(m-1)",
       "",
       {{Sym::m, -20, 50}},
       {},
       [](T t, B b, Form) {
         long long m = b.get(Sym::m);
         return sv(t.l(m), t.f(m + 1) + t.f(m - 1));
       },
       nullptr,
       0});

  add({"lucas-neighbor-sum",
       "L(n+1) + L(n-1) = (k^2+4)*F(n)",
       "",
       {{Sym::n, -60, 60}},
       {},
       [](T t, B b, Form) {
         long long n = b.get(Sym::n);
         return sv(t.l(n + 1) + t.l(n - 1), t.params().dz * t.f(n));
       },
       nullptr,
       0});

  add({"f-gap-lucas",
       "F(n+2) - L(n-2) = k*L(n)",
       "F(n+2) - F(n-2) = k*L(n)",
       {{Sym::n, -60, 60}},
       {},
       [](T t, B b, Form form) {
         long long n = b.get(Sym::n);
         Int lhs = form == Form::verbatim ? t.f(n + 2) - t.l(n - 2) : t.f(n + 2) - t.f(n - 2);
         return sv(lhs, t.params().kz * t.l(n));
       },
       nullptr,
       0});

  add({"lf-product",
       "L(m)*F(n) - F(m+n) = (-1)^m*L(n-m)",
       "L(m)*F(n) - F(m+n) = (-1)^m*F(n-m)",
       {{Sym::m, -10, 10}, {Sym::n, -60, 60}},
       {},
       [](T t, B b, Form form) {
         long long m = b.get(Sym::m), n = b.get(Sym::n);
         Int lhs = t.l(m) * t.f(n) - t.f(m + n);
         Int rhs = form == Form::verbatim ? Int(sign_pow(m) * t.l(n - m))
                                          : Int(sign_pow(m) * t.f(n - m));
         return sv(lhs, rhs);
       },
       nullptr,
       0});

  add({"f-doubling",
       "F(2n) = F(n)*L(n)",
       "",
       {{Sym::n, -60, 60}},
       {},
       [](T t, B b, Form) {
         long long n = b.get(Sym::n);
         return sv(t.f(2 * n), t.f(n) * t.l(n));
       },
       nullptr,
       0});

  add({"f-addition",
       "F(n+m) + (-1)^m*F(n-m) = F(n)*L(m)",
       "",
       {{Sym::n, -60, 60}, {Sym::m, -10, 10}},
       {},
       [](T t, B b, Form) {
         long long n = b.get(Sym::n), m = b.get(Sym::m);
         return sv(t.f(n + m) + sign_pow(m) * t.f(n - m), t.f(n) * t.l(m));
       },
       nullptr,
       0});

  add({"reciprocal-sum",
       "sum_(j=0..n) 1/F(j) = (k+2)/k - F(2^n-1)/F(2^n)",
       "sum_(j=0..n) 1/F(2^j) = (k+2)/k - F(2^n-1)/F(2^n)",
       {{Sym::n, 1, 12}},
       {},
       [](T t, B b, Form form) {
         const SeqParams& p = t.params();
         long long n = b.get(Sym::n);
         DoublingTriple top = pair_doubling(p, (1LL << n) - 1);
         Rat rhs = make_rat(p.kz + 2, p.kz) - make_rat(top.f_n, top.f_next);
         if (form == Form::verbatim) {
           SideValues out{Rat(0), rhs, false,
                          "the printed sum starts at j = 0 and 1/F(0) is undefined"};
           return out;
         }
         Rat lhs(0);
         for (long long j = 0; j <= n; ++j)
           lhs += make_rat(Int(1), pair_doubling(p, 1LL << j).f_n);
         return svr(lhs, rhs);
       },
       nullptr,
       0});

  add({"pm1-curve",
       "F(n+1)^2 - k*F(n)*F(n+1) - F(n)^2 = (-1)^n",
       "",
       {{Sym::n, -60, 60}},
       {},
       [](T t, B b, Form) {
         long long n = b.get(Sym::n);
         Int lhs = t.f(n + 1) * t.f(n + 1) - t.params().kz * t.f(n) * t.f(n + 1) -
                   t.f(n) * t.f(n);
         return sv(lhs, sign_pow(n));
       },
       nullptr,
       0});

  add({"norm-form",
       "(k^2+4)*F(n)^2 - L(n)^2 = 4*(-1)^(n+1)",
       "",
       {{Sym::n, -20, 50}},
       {},
       [](T t, B b, Form) {
         long long n = b.get(Sym::n);
         Int lhs = t.params().dz * t.f(n) * t.f(n) - t.l(n) * t.l(n);
         return sv(lhs, 4 * sign_pow(n + 1));
       },
       nullptr,
       0});

  // The printed cubic identity halves k on both sides; the corrected factor
  // is k itself.
  for (Family fam : {Family::fib, Family::lucas}) {
    bool isf = fam == Family::fib;
    add({isf ? "carlitz-cubes-f" : "carlitz-cubes-l",
         std::string(isf ? "F" : "L") + "(n+1)^3 - (k/2)^3*" + (isf ? "F" : "L") +
             "(n)^3 - " + (isf ? "F" : "L") + "(n-1)^3 = 3*(k/2)*" + (isf ? "F" : "L") +
             "(n+1)*" + (isf ? "F" : "L") + "(n)*" + (isf ? "F" : "L") + "(n-1)",
         std::string(isf ? "F" : "L") + "(n+1)^3 - k^3*" + (isf ? "F" : "L") + "(n)^3 - " +
             (isf ? "F" : "L") + "(n-1)^3 = 3*k*" + (isf ? "F" : "L") + "(n+1)*" +
             (isf ? "F" : "L") + "(n)*" + (isf ? "F" : "L") + "(n-1)",
         {{Sym::n, -60, 60}},
         {},
         [isf](T t, B b, Form form) {
           long long n = b.get(Sym::n);
           auto z = [&](long long x) { return isf ? t.f(x) : t.l(x); };
           Rat kk = form == Form::verbatim ? make_rat(t.params().kz, Int(2))
                                           : Rat(t.params().kz);
           Rat lhs = Rat(z(n + 1) * z(n + 1) * z(n + 1)) -
                     kk * kk * kk * Rat(z(n) * z(n) * z(n)) -
                     Rat(z(n - 1) * z(n - 1) * z(n - 1));
           Rat rhs = 3 * kk * Rat(z(n + 1) * z(n) * z(n - 1));
           return svr(lhs, rhs);
         },
         nullptr,
         0});
  }

  // Difference-of-products catalog; the first block is the classical k = 1
  // list, the second its one-parameter extension.
  auto cube_far_up = [](T t, long long n, bool cube) {
    Int f3 = t.f(n + 3);
    Int sub = cube ? Int(f3 * f3 * f3) : Int(f3 * f3);
    return Int(t.f(n + 1) * t.f(n + 2) * t.f(n + 6) - sub);
  };
  auto cube_far_down = [](T t, long long n, bool corrected) {
    Int sub = corrected ? t.f(n + 3) : t.f(n + 1);
    return Int(t.f(n) * t.f(n + 4) * t.f(n + 5) - sub * sub * sub);
  };
  auto cube_near_down = [](T t, long long n) {
    return Int(t.f(n - 2) * t.f(n + 1) * t.f(n + 1) - t.f(n) * t.f(n) * t.f(n));
  };
  auto cube_near_up = [](T t, long long n) {
    return Int(t.f(n + 2) * t.f(n - 1) * t.f(n - 1) - t.f(n) * t.f(n) * t.f(n));
  };
  auto quartic_down = [](T t, long long n) {
    Int f1 = t.f(n + 1), f0 = t.f(n);
    return Int(t.f(n - 3) * f1 * f1 * f1 - f0 * f0 * f0 * f0);
  };
  auto quartic_up = [](T t, long long n) {
    Int fm = t.f(n - 1), f0 = t.f(n);
    return Int(t.f(n + 3) * fm * fm * fm - f0 * f0 * f0 * f0);
  };

  add({"cube-diff-far-up",
       "F(n+1)*F(n+2)*F(n+6) - F(n+3)^2 = (-1)^n*F(n)",
       "F(n+1)*F(n+2)*F(n+6) - F(n+3)^3 = (-1)^n*F(n)",
       {{Sym::n, -60, 60}},
       {1},
       [cube_far_up](T t, B b, Form form) {
         long long n = b.get(Sym::n);
         return sv(cube_far_up(t, n, form == Form::corrected), sign_pow(n) * t.f(n));
       },
       [cube_far_up](T t, long long n) { return Rat(cube_far_up(t, n, true)); },
       1});

  add({"cube-diff-far-down",
       "F(n)*F(n+4)*F(n+5) - F(n+1)^3 = (-1)^(n+1)*F(n+6)",
       "F(n)*F(n+4)*F(n+5) - F(n+3)^3 = (-1)^(n+1)*F(n+6)",
       {{Sym::n, -60, 60}},
       {1},
       [cube_far_down](T t, B b, Form form) {
         long long n = b.get(Sym::n);
         return sv(cube_far_down(t, n, form == Form::corrected), sign_pow(n + 1) * t.f(n + 6));
       },
       [cube_far_down](T t, long long n) { return Rat(cube_far_down(t, n, true)); },
       1});

  add({"cube-diff-near-down",
       "F(n-2)*F(n+1)^2 - F(n)^3 = (-1)^(n-1)*F(n-1)",
       "",
       {{Sym::n, -60, 60}},
       {1},
       [cube_near_down](T t, B b, Form) {
         long long n = b.get(Sym::n);
         return sv(cube_near_down(t, n), sign_pow(n - 1) * t.f(n - 1));
       },
       [cube_near_down](T t, long long n) { return Rat(cube_near_down(t, n)); },
       1});

  add({"cube-diff-near-up",
       "F(n+2)*F(n-1)^2 - F(n)^3 = (-1)^n*F(n+1)",
       "",
       {{Sym::n, -60, 60}},
       {1},
       [cube_near_up](T t, B b, Form) {
         long long n = b.get(Sym::n);
         return sv(cube_near_up(t, n), sign_pow(n) * t.f(n + 1));
       },
       [cube_near_up](T t, long long n) { return Rat(cube_near_up(t, n)); },
       1});

  add({"quartic-diff-down",
       "F(n-3)*F(n+1)^3 - F(n)^4 = (-1)^n*(F(n-1)*F(n+3) + 2*F(n)^2)",
       "",
       {{Sym::n, -60, 60}},
       {1},
       [quartic_down](T t, B b, Form) {
         long long n = b.get(Sym::n);
         Int rhs = sign_pow(n) * (t.f(n - 1) * t.f(n + 3) + 2 * t.f(n) * t.f(n));
         return sv(quartic_down(t, n), rhs);
       },
       [quartic_down](T t, long long n) { return Rat(quartic_down(t, n)); },
       2});

  add({"quartic-diff-up",
       "F(n+3)*F(n-1)^3 - F(n)^4 = (-1)^n*(F(n)^2 + F(n)*F(n-1) + 2*F(n-1)^2)",
       "",
       {{Sym::n, -60, 60}},
       {1},
       [quartic_up](T t, B b, Form) {
         long long n = b.get(Sym::n);
         Int rhs = sign_pow(n) *
                   (t.f(n) * t.f(n) + t.f(n) * t.f(n - 1) + 2 * t.f(n - 1) * t.f(n - 1));
         return sv(quartic_up(t, n), rhs);
       },
       [quartic_up](T t, long long n) { return Rat(quartic_up(t, n)); },
       2});

  add({"quartic-diff-up-alt",
       "F(n+3)*F(n-1)^3 - F(n)^4 = (-1)^n*(F(n)*F(n+1) + 2*F(n-1)^2)",
       "",
       {{Sym::n, -60, 60}},
       {1},
       [quartic_up](T t, B b, Form) {
         long long n = b.get(Sym::n);
         Int rhs = sign_pow(n) * (t.f(n) * t.f(n + 1) + 2 * t.f(n - 1) * t.f(n - 1));
         return sv(quartic_up(t, n), rhs);
       },
       [quartic_up](T t, long long n) { return Rat(quartic_up(t, n)); },
       2});

  add({"cube-diff-far-up-gen",
       "F(n+1)*F(n+2)*F(n+6) - F(n+3)^2 = (-1)^n*(k^2*F(n) + (k^3-1)*F(n+1))",
       "F(n+1)*F(n+2)*F(n+6) - F(n+3)^3 = (-1)^n*(k^3*F(n) + (k^4-1)*F(n+1))",
       {{Sym::n, -60, 60}},
       {},
       [cube_far_up](T t, B b, Form form) {
         long long n = b.get(Sym::n);
         const Int& k = t.params().kz;
         if (form == Form::verbatim)
           return sv(cube_far_up(t, n, false),
                     sign_pow(n) * (k * k * t.f(n) + (k * k * k - 1) * t.f(n + 1)));
         return sv(cube_far_up(t, n, true),
                   sign_pow(n) * (k * k * k * t.f(n) + (k * k * k * k - 1) * t.f(n + 1)));
       },
       [cube_far_up](T t, long long n) { return Rat(cube_far_up(t, n, true)); },
       1});

  add({"cube-diff-far-down-gen",
       "F(n)*F(n+4)*F(n+5) - F(n+1)^3 = (-1)^(n+1)*(F(n+6) + k*(k-1)*F(n+4))",
       "F(n)*F(n+4)*F(n+5) - F(n+3)^3 = "
       "(-1)^(n+1)*((k^5+2*k^3+2*k)*F(n) + (k^2+1)^3*F(n+1))",
       {{Sym::n, -60, 60}},
       {},
       [cube_far_down](T t, B b, Form form) {
         long long n = b.get(Sym::n);
         const Int& k = t.params().kz;
         if (form == Form::verbatim)
           return sv(cube_far_down(t, n, false),
                     sign_pow(n + 1) * (t.f(n + 6) + k * (k - 1) * t.f(n + 4)));
         Int c0 = k * k * k * k * k + 2 * k * k * k + 2 * k;
         Int c1 = (k * k + 1) * (k * k + 1) * (k * k + 1);
         return sv(cube_far_down(t, n, true), sign_pow(n + 1) * (c0 * t.f(n) + c1 * t.f(n + 1)));
       },
       [cube_far_down](T t, long long n) { return Rat(cube_far_down(t, n, true)); },
       1});

  add({"cube-diff-near-down-gen",
       "F(n-2)*F(n+1)^2 - F(n)^3 = (-1)^(n-1)*(k*F(n-1) + (k^2-1)*F(n))",
       "",
       {{Sym::n, -60, 60}},
       {},
       [cube_near_down](T t, B b, Form) {
         long long n = b.get(Sym::n);
         const Int& k = t.params().kz;
         return sv(cube_near_down(t, n), sign_pow(n - 1) * (k * t.f(n - 1) + (k * k - 1) * t.f(n)));
       },
       [cube_near_down](T t, long long n) { return Rat(cube_near_down(t, n)); },
       1});

  add({"cube-diff-near-up-gen",
       "F(n+2)*F(n-1)^2 - F(n)^3 = (-1)^n*(F(n) + k*F(n-1))",
       "",
       {{Sym::n, -60, 60}},
       {},
       [cube_near_up](T t, B b, Form) {
         long long n = b.get(Sym::n);
         return sv(cube_near_up(t, n), sign_pow(n) * (t.f(n) + t.params().kz * t.f(n - 1)));
       },
       [cube_near_up](T t, long long n) { return Rat(cube_near_up(t, n)); },
       1});

  add({"quartic-diff-down-gen",
       "F(n-3)*F(n+1)^3 - F(n)^4 = "
       "(-1)^n*(F(n-1)*F(n+3) + 2*F(n)^2 + (k^2-1)*F(n)*F(n+2))",
       "",
       {{Sym::n, -60, 60}},
       {},
       [quartic_down](T t, B b, Form) {
         long long n = b.get(Sym::n);
         const Int& k = t.params().kz;
         Int rhs = sign_pow(n) * (t.f(n - 1) * t.f(n + 3) + 2 * t.f(n) * t.f(n) +
                                  (k * k - 1) * t.f(n) * t.f(n + 2));
         return sv(quartic_down(t, n), rhs);
       },
       [quartic_down](T t, long long n) { return Rat(quartic_down(t, n)); },
       2});

  add({"quartic-diff-up-gen",
       "F(n+3)*F(n-1)^3 - F(n)^4 = (-1)^n*(F(n)^2 + F(n)*F(n-1) + 2*F(n-1)^2)",
       "F(n+3)*F(n-1)^3 - F(n)^4 = (-1)^n*(F(n)^2 + k*F(n)*F(n-1) + (k^2+1)*F(n-1)^2)",
       {{Sym::n, -60, 60}},
       {},
       [quartic_up](T t, B b, Form form) {
         long long n = b.get(Sym::n);
         const Int& k = t.params().kz;
         Int rhs = form == Form::verbatim
                       ? Int(sign_pow(n) * (t.f(n) * t.f(n) + t.f(n) * t.f(n - 1) +
                                            2 * t.f(n - 1) * t.f(n - 1)))
                       : Int(sign_pow(n) * (t.f(n) * t.f(n) + k * t.f(n) * t.f(n - 1) +
                                            (k * k + 1) * t.f(n - 1) * t.f(n - 1)));
         return sv(quartic_up(t, n), rhs);
       },
       [quartic_up](T t, long long n) { return Rat(quartic_up(t, n)); },
       2});

  return reg;
}

}  // namespace

const std::vector<IdentityDef>& identity_registry() {
  static const std::vector<IdentityDef> reg = build_registry();
  return reg;
}

const IdentityDef& find_identity(const std::string& id) {
  for (const IdentityDef& d : identity_registry())
    if (d.id == id) return d;
  throw std::invalid_argument("unknown identity '" + id + "'");
}

SideValues verify_identity(const SeqParams& p, const std::string& id, const Binding& b,
                           Form form) {
  const IdentityDef& def = find_identity(id);
  long long need = 20;
  for (const SymRange& r : def.ranges) {
    long long v = b.get(r.sym);
    need = std::max(need, v < 0 ? -v : v);
  }
  SeqTable t(p, -(3 * need + 20), 3 * need + 20);
  return def.eval(t, b, form);
}

namespace {

void enumerate_bindings(const std::vector<SymRange>& ranges, long long clamp,
                        const std::function<void(const Binding&)>& fn) {
  std::vector<SymRange> rs = ranges;
  for (SymRange& r : rs) {
    r.lo = std::max(r.lo, -clamp);
    r.hi = std::min(r.hi, clamp);
    if (r.lo > r.hi) return;
  }
  Binding b;
  std::function<void(std::size_t)> rec = [&](std::size_t d) {
    if (d == rs.size()) {
      fn(b);
      return;
    }
    for (long long v = rs[d].lo; v <= rs[d].hi; ++v) {
      b.set(rs[d].sym, v);
      rec(d + 1);
    }
  };
  rec(0);
}

Counterexample make_counterexample(long long k, const IdentityDef& def, const Binding& b,
                                   const SideValues& v) {
  Counterexample ce;
  ce.k = k;
  for (const SymRange& r : def.ranges) ce.binding.emplace_back(sym_name(r.sym), b.get(r.sym));
  ce.lhs = v.defined ? str(v.lhs) : "undefined";
  ce.rhs = str(v.rhs);
  ce.note = v.note;
  return ce;
}

// Distance from the canonical binding (n, m, alpha, t = 1; i, j = 0), used to
// keep the smallest counterexample instead of the first one enumerated.
long long binding_distance(const IdentityDef& def, const Binding& b) {
  long long total = 0;
  for (const SymRange& r : def.ranges) {
    long long canon = (r.sym == Sym::i || r.sym == Sym::j) ? 0 : 1;
    long long d = b.get(r.sym) - canon;
    total += d < 0 ? -d : d;
  }
  return total;
}

}  // namespace

std::vector<IdentityReport> sweep_identities(const std::vector<std::string>& ids,
                                             const SweepOptions& opt) {
  std::vector<const IdentityDef*> defs;
  if (ids.empty())
    for (const IdentityDef& d : identity_registry()) defs.push_back(&d);
  else
    for (const std::string& id : ids) defs.push_back(&find_identity(id));

  std::map<long long, SeqTable> tables;
  std::vector<IdentityReport> out;
  for (const IdentityDef* def : defs) {
    IdentityReport rep;
    rep.id = def->id;
    rep.correction = def->corrected_text;
    bool verbatim_failed = false, working_failed = false;
    long long best_verbatim = -1, best_unexpected = -1;
    for (long long k : opt.ks) {
      if (!def->only_k.empty() &&
          std::find(def->only_k.begin(), def->only_k.end(), k) == def->only_k.end())
        continue;
      auto it = tables.find(k);
      if (it == tables.end()) it = tables.emplace(k, SeqTable(SeqParams(k), -140, 140)).first;
      const SeqTable& t = it->second;
      enumerate_bindings(def->ranges, opt.max_abs_index, [&](const Binding& b) {
        ++rep.instances;
        SideValues v = def->eval(t, b, Form::verbatim);
        if (!v.holds()) {
          verbatim_failed = true;
          long long dist = binding_distance(*def, b);
          if (!rep.verbatim_counterexample || dist < best_verbatim) {
            rep.verbatim_counterexample = make_counterexample(k, *def, b, v);
            best_verbatim = dist;
          }
        }
        if (def->has_correction()) {
          SideValues c = def->eval(t, b, Form::corrected);
          if (!c.holds()) {
            working_failed = true;
            long long dist = binding_distance(*def, b);
            if (!rep.unexpected_counterexample || dist < best_unexpected) {
              rep.unexpected_counterexample = make_counterexample(k, *def, b, c);
              best_unexpected = dist;
            }
          }
        } else if (!v.holds()) {
          working_failed = true;
          long long dist = binding_distance(*def, b);
          if (!rep.unexpected_counterexample || dist < best_unexpected) {
            rep.unexpected_counterexample = make_counterexample(k, *def, b, v);
            best_unexpected = dist;
          }
        }
      });
    }
    if (def->fit_kind != 0) {
      rep.solver_confirmed = true;
      for (long long k : opt.ks) {
        if (!def->only_k.empty() &&
            std::find(def->only_k.begin(), def->only_k.end(), k) == def->only_k.end())
          continue;
        if (!fit_identity_rhs(SeqParams(k), def->id)) rep.solver_confirmed = false;
      }
    }
    rep.unexpected = working_failed;
    if (working_failed)
      rep.status = "fails_as_printed";
    else if (!verbatim_failed)
      rep.status = "holds";
    else
      rep.status = "holds_with_correction";
    out.push_back(std::move(rep));
  }
  return out;
}

// --- correction solver -----------------------------------------------------

std::vector<AnsatzTerm> linear_f_ansatz() {
  return {
      {"(-1)^n*F(n)", [](const SeqTable& t, long long n) { return Rat(sign_pow(n) * t.f(n)); }},
      {"(-1)^n*F(n+1)",
       [](const SeqTable& t, long long n) { return Rat(sign_pow(n) * t.f(n + 1)); }},
  };
}

std::vector<AnsatzTerm> quadratic_f_ansatz() {
  return {
      {"(-1)^n*F(n)^2",
       [](const SeqTable& t, long long n) { return Rat(sign_pow(n) * t.f(n) * t.f(n)); }},
      {"(-1)^n*F(n)*F(n-1)",
       [](const SeqTable& t, long long n) { return Rat(sign_pow(n) * t.f(n) * t.f(n - 1)); }},
      {"(-1)^n*F(n-1)^2",
       [](const SeqTable& t, long long n) { return Rat(sign_pow(n) * t.f(n - 1) * t.f(n - 1)); }},
  };
}

namespace {

std::string fit_text(const std::vector<Rat>& coeff, const std::vector<AnsatzTerm>& ansatz) {
  std::string out;
  for (std::size_t i = 0; i < coeff.size(); ++i) {
    if (coeff[i] == 0) continue;
    if (!out.empty()) out += " + ";
    if (coeff[i] == 1)
      out += ansatz[i].text;
    else
      out += "(" + str(coeff[i]) + ")*" + ansatz[i].text;
  }
  return out.empty() ? "0" : out;
}

}  // namespace

std::optional<CorrectionFit> correction_solve(
    const SeqParams& p, const std::function<Rat(const SeqTable&, long long)>& lhs,
    const std::vector<AnsatzTerm>& ansatz, long long sample_lo, long long sample_hi,
    long long verify_lo, long long verify_hi) {
  if (ansatz.empty()) throw std::invalid_argument("underdetermined ansatz: no terms supplied");
  std::size_t m = ansatz.size();
  if (sample_hi - sample_lo + 1 < static_cast<long long>(m))
    throw std::invalid_argument("underdetermined ansatz: fewer samples than terms");
  long long lo = std::min(sample_lo, verify_lo), hi = std::max(sample_hi, verify_hi);
  SeqTable t(p, lo - 10, hi + 10);

  std::vector<std::vector<Rat>> rows;
  for (long long n = sample_lo; n <= sample_hi; ++n) {
    std::vector<Rat> row;
    row.reserve(m + 1);
    for (const AnsatzTerm& term : ansatz) row.push_back(term.eval(t, n));
    row.push_back(lhs(t, n));
    rows.push_back(std::move(row));
  }

  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    Rat pv = rows[rank][col];
    for (Rat& x : rows[rank]) x /= pv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank) continue;
      Rat f = rows[r][col];
      if (f == 0) continue;
      for (std::size_t c = col; c <= m; ++c) rows[r][c] -= f * rows[rank][c];
    }
    pivot_cols.push_back(col);
    ++rank;
  }
  for (std::size_t r = rank; r < rows.size(); ++r)
    if (rows[r][m] != 0) return std::nullopt;  // inconsistent: ansatz cannot express the lhs
  if (rank < m)
    throw std::invalid_argument("underdetermined ansatz: terms are linearly dependent");

  std::vector<Rat> coeff(m, Rat(0));
  for (std::size_t r = 0; r < rank; ++r) coeff[pivot_cols[r]] = rows[r][m];

  for (long long n = verify_lo; n <= verify_hi; ++n) {
    Rat acc(0);
    for (std::size_t i = 0; i < m; ++i) acc += coeff[i] * ansatz[i].eval(t, n);
    if (acc != lhs(t, n)) return std::nullopt;
  }
  return CorrectionFit{coeff, fit_text(coeff, ansatz)};
}

std::optional<CorrectionFit> fit_identity_rhs(const SeqParams& p, const std::string& id) {
  const IdentityDef& def = find_identity(id);
  if (!def.lhs_fn)
    throw std::invalid_argument("identity '" + id + "' has no solver route");
  std::vector<AnsatzTerm> ansatz =
      def.fit_kind == 2 ? quadratic_f_ansatz() : linear_f_ansatz();
  return correction_solve(p, def.lhs_fn, ansatz, 1, 10, -30, 30);
}

// --- convolutions -----------------------------------------------------------

Int convolution_sum(const SeqParams& p, long long m, long long n) {
  if (m < 1) throw std::domain_error("convolution order m must be >= 1");
  if (n < 0) throw std::domain_error("convolution index n must be >= 0");
  std::vector<Int> f(static_cast<std::size_t>(n) + 2);
  f[0] = 0;
  f[1] = 1;
  for (std::size_t i = 2; i < f.size(); ++i) f[i] = p.kz * f[i - 1] + f[i - 2];
  std::vector<Int> cur(f.begin(), f.begin() + n + 1);
  for (long long step = 2; step <= m; ++step) {
    std::vector<Int> next(static_cast<std::size_t>(n) + 1, Int(0));
    for (long long total = 0; total <= n; ++total)
      for (long long j = 0; j <= total; ++j)
        next[static_cast<std::size_t>(total)] +=
            cur[static_cast<std::size_t>(j)] * f[static_cast<std::size_t>(total - j)];
    cur = std::move(next);
  }
  return cur[static_cast<std::size_t>(n)];
}

Int convolution_closed(const SeqParams& p, long long m, long long n) {
  if (m < 1) throw std::domain_error("convolution order m must be >= 1");
  if (n < 0) throw std::domain_error("convolution index n must be >= 0");
  Int direct = convolution_sum(p, m, n);
  if (n < m) {
    if (direct != 0) throw std::logic_error("convolution of short n was nonzero");
    return 0;
  }
  long long steps = n - m;
  Rat w_prev(1);           // W_0 = S_m(m)
  Rat w(make_int(m) * p.kz);  // W_1 = S_m(m+1)
  Rat result = steps == 0 ? w_prev : w;
  for (long long r = 2; r <= steps; ++r) {
    Rat w_next = (Rat(p.kz * make_int(r + m - 1)) * w + Rat(make_int(r + 2 * m - 2)) * w_prev) / Rat(make_int(r));
    w_prev = w;
    w = w_next;
    result = w;
  }
  if (!is_integer(result))
    throw std::logic_error("convolution recurrence produced a non-integer");
  Int value = to_int(result);
  if (value != direct)
    throw std::logic_error("convolution recurrence disagreed with the direct sum");
  return value;
}

Rat convolution_series(const SeqParams& p, long long m, long long n) {
  if (m < 1) throw std::domain_error("convolution order m must be >= 1");
  if (n < 0) throw std::domain_error("convolution index n must be >= 0");
  if (n < m) return Rat(0);
  long long j = n - m;
  Rat half_k = make_rat(p.kz, 2);
  Rat quarter_d = make_rat(p.dz, 4);
  Int rising = 1;  // (2m)_j
  for (long long i = 0; i < j; ++i) rising *= make_int(2 * m + i);
  Rat total(0);
  for (long long r = 0; 2 * r <= j; ++r) {
    Int half_rising_num = 1;  // (m + 1/2)_r = prod (2m+1+2i) / 2^r
    for (long long i = 0; i < r; ++i) half_rising_num *= make_int(2 * m + 1 + 2 * i);
    Rat num = Rat(rising) * rat_pow(half_k, j - 2 * r) * rat_pow(quarter_d, r);
    Rat den = Rat(ipow(4, static_cast<unsigned long>(r))) * Rat(factorial(r)) *
              make_rat(half_rising_num, ipow(2, static_cast<unsigned long>(r))) *
              Rat(factorial(j - 2 * r));
    total += num / den;
  }
  return total;
}

// --- continued fractions ----------------------------------------------------

ContinuedFraction continued_fraction(const SeqParams& p, long long m, long long t) {
  if (m < 1) throw std::domain_error("continued fraction needs m >= 1");
  if (t < 1) throw std::domain_error("continued fraction needs depth t >= 1");
  Int lm = lucas(p, m);
  int sign = parity_sign(m + 1);
  ContinuedFraction out{std::vector<Int>(static_cast<std::size_t>(t), lm),
                        sign,
                        make_rat(fib(p, m * (t + 1)), fib(p, m * t)),
                        Rat(0),
                        t,
                        t == m};
  Rat acc(lm);
  for (long long s = 1; s < t; ++s) acc = Rat(lm) + Rat(sign) / acc;
  out.reconstructed = acc;
  if (out.reconstructed != out.value)
    throw std::logic_error("continued fraction reconstruction disagreed with the ratio");
  return out;
}

// --- analytic checks ----------------------------------------------------------

ArctanReport arctan_suite(const SeqParams& p, long long m_max, long long tail_terms) {
  if (m_max < 1) throw std::domain_error("arctan suite needs m_max >= 1");
  if (tail_terms < 1) throw std::domain_error("arctan suite needs at least one tail term");
  ArctanReport rep{m_max, true, tail_terms, 0.0, kArctanTolerance, false};
  SeqTable t(p, 0, std::max(2 * m_max + 2, 2 * tail_terms + 3));
  for (long long m = 1; m <= m_max; ++m)
    if (1 + t.f(2 * m + 2) * t.f(2 * m) != t.f(2 * m + 1) * t.f(2 * m + 1)) {
      rep.exact_all_hold = false;
      break;
    }
  double target = std::atan(1.0 / static_cast<double>(p.k));
  double sum = 0.0;
  for (long long i = 0; i <= tail_terms; ++i)
    sum += std::atan(static_cast<double>(p.k) / t.f(2 * i + 3).get_d());
  rep.residual = std::fabs(sum - target);
  rep.residual_within_tolerance = rep.residual < rep.tolerance;
  return rep;
}

ReciprocalSumReport reciprocal_sum(const SeqParams& p, long long n_max) {
  if (n_max < 0) throw std::domain_error("reciprocal sum needs n_max >= 0");
  FieldConstants c = field_constants(p.k);
  ReciprocalSumReport rep{{},
                          true,
                          QuadRat::rational(make_rat(p.kz + 2, p.kz), c.d) - c.unit_inv,
                          c.unit,  // placeholder, replaced below
                          false,
                          ""};
  QuadRat one = QuadRat::rational(Rat(1), c.d);
  QuadRat coth = (c.unit + c.unit_inv) / (c.unit - c.unit_inv);
  rep.limit_alt = one + c.unit_inv * coth;
  rep.limits_agree = rep.limit == rep.limit_alt;
  rep.limit_decimal = rep.limit.to_decimal(12);
  Rat acc = make_rat(Int(1), pair_doubling(p, 1).f_n);  // j = 0 term, 1/F(1)
  for (long long n = 1; n <= n_max; ++n) {
    acc += make_rat(Int(1), pair_doubling(p, 1LL << n).f_n);
    rep.partial_sums.push_back(acc);
    DoublingTriple top = pair_doubling(p, (1LL << n) - 1);
    Rat closed = make_rat(p.kz + 2, p.kz) - make_rat(top.f_n, top.f_next);
    if (acc != closed) rep.closed_form_matches_all = false;
  }
  return rep;
}

}  // namespace genfib
