import init, { orbit_census, limit_function, fuse_table } from "./pkg/bs_demo.js";

const $ = (id) => document.getElementById(id);

function table(header, rows) {
  const t = document.createElement("table");
  const tr = t.insertRow();
  for (const h of header) {
    const th = document.createElement("th");
    th.textContent = h;
    tr.appendChild(th);
  }
  for (const r of rows) {
    const row = t.insertRow();
    for (const c of r) row.insertCell().textContent = c;
  }
  return t;
}

function pre(text) {
  const p = document.createElement("pre");
  p.textContent = text;
  return p;
}

function show(out, f) {
  out.replaceChildren();
  try {
    for (const node of f()) out.appendChild(node);
  } catch (e) {
    const p = document.createElement("p");
    p.className = "err";
    p.textContent = String(e);
    out.appendChild(p);
  }
}

function bind(form, f) {
  $(form).addEventListener("submit", (ev) => {
    ev.preventDefault();
    show($(form + "-out"), () => f(new FormData(ev.target)));
  });
}

await init();

bind("orbit", (fd) => {
  const r = JSON.parse(orbit_census(fd.get("necklace"), Number(fd.get("power"))));
  return [
    pre(`|O| = ${r.size}\nD(x) = ${r.d_series}`),
    table(["level", "count"], r.levels.map((c, i) => [i, c])),
  ];
});

bind("limit", (fd) => {
  const r = JSON.parse(limit_function(fd.get("necklace"), Number(fd.get("coeffs"))));
  if (!r.closed) return [pre(`the degenerate forest does not close\n${r.non_closing}`)];
  return [pre(`H(x) = ${r.H}\n\n${r.roots} roots\nseries: ${r.series.join(", ")}`)];
});

bind("fuse", (fd) => {
  const rows = JSON.parse(fuse_table(Number(fd.get("k"))));
  return [table(["k", "u_k", "v_k"], rows.map((r) => [r.k, r.u, r.v]))];
});

for (const f of ["orbit", "limit", "fuse"]) $(f).requestSubmit();
