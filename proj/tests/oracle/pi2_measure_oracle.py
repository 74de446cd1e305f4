# Independent mpmath oracle for the pi^2 measure table and probe quantities.
from mpmath import mp, mpf, pi, log, floor, sin, nstr
mp.dps = 200
a = pi**2
x = a
qs = []
for _ in range(32):
    f = int(floor(x)); qs.append(f); x = 1/(x - f)
print("quotients", qs[:31])
p2, p1, q2, q1 = 0, 1, 1, 0
rows = []
for n, t in enumerate(qs[:31]):
    p, q = t*p1 + p2, t*q1 + q2
    rows.append((n + 1, p, q)); p2, p1, q2, q1 = p1, p, q1, q
for dn, p, q in rows:
    if q == 1:
        print(dn, p, q, "", "1.000000"); continue
    mu = -log(abs(a - mpf(p)/q))/log(q)
    mur = mpf(round(mu*10**6))/10**6
    lag_r = mpf(q)**(mur - 2)
    lag_e = 1/(q*q*abs(a - mpf(p)/q))
    print(dn, p, q, nstr(mu, 12), nstr(lag_r, 10), nstr(lag_e, 10))
print("pi2_30", nstr(a, 40))
print("pi50", nstr(pi, 52))
print("sqrt2", nstr(mp.sqrt(2), 30))
e3 = 7*a - 69
print("eps3", nstr(e3, 12), nstr(sin(pi*e3), 12))
print("eps_10_1", nstr(a - 10, 12))
print("eps_227_23", nstr(23*a - 227, 12))
