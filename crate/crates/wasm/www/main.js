import init, { sweepCsv, decomposeBinary, payGap } from "./pkg/paygap_wasm.js";

const $ = (id) => document.getElementById(id);
const mode = () => $("mode").value;

function show(out, f) {
  out.classList.remove("error");
  try {
    out.textContent = f();
  } catch (e) {
    out.classList.add("error");
    out.textContent = String(e);
  }
}

// Fractions in exact mode are plotted through their float value.
function toNumber(s) {
  const [a, b] = s.split("/");
  return b === undefined ? Number(a) : Number(a) / Number(b);
}

function plot(csv) {
  const rows = csv.trim().split("\n").slice(1).map((l) => l.split(",").slice(0, 4).map(toNumber));
  const w = 640, h = 300, pad = 30;
  const ys = rows.flatMap((r) => r.slice(1));
  const lo = Math.min(0, ...ys), hi = Math.max(...ys);
  const x = (v) => pad + ((v - 0.5) / 0.5) * (w - 2 * pad);
  const y = (v) => h - pad - ((v - lo) / (hi - lo || 1)) * (h - 2 * pad);
  const series = [["W_I", 1, "#1f77b4"], ["W_J", 2, "#ff7f0e"], ["gap", 3, "#2ca02c"]];
  const lines = series.map(([name, col, color]) => {
    const pts = rows.map((r) => `${x(r[0]).toFixed(1)},${y(r[col]).toFixed(1)}`).join(" ");
    return `<polyline fill="none" stroke="${color}" stroke-width="1.5" points="${pts}"><title>${name}</title></polyline>`;
  });
  const legend = series.map(([name, , color], i) =>
    `<text x="${pad + 10 + i * 70}" y="${pad - 10}" fill="${color}" font-size="12">${name}</text>`);
  $("sweep-chart").innerHTML =
    `<svg width="${w}" height="${h}">` +
    `<line x1="${pad}" y1="${y(0)}" x2="${w - pad}" y2="${y(0)}" stroke="#999"/>` +
    `<text x="${pad}" y="${h - 8}" font-size="12">1/2</text>` +
    `<text x="${w - pad - 6}" y="${h - 8}" font-size="12">1</text>` +
    lines.join("") + legend.join("") + "</svg>";
}

await init();

$("run-sweep").onclick = () =>
  show($("sweep-out"), () => {
    const csv = sweepCsv($("grid").value, mode());
    plot(csv);
    return csv;
  });

$("run-decomp").onclick = () =>
  show($("decomp-out"), () =>
    decomposeBinary($("d-p").value, $("d-q").value, $("d-coarse").value, $("d-fine").value, $("d-tasks").value, mode()));

$("run-gap").onclick = () =>
  show($("gap-out"), () =>
    payGap($("g-p").value, $("g-qi").value, $("g-qj").value, $("g-acc").value, $("g-tasks").value, mode()));
