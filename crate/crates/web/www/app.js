import init, { codeCurves, catCurves, gaussianPair } from "./pkg/cwoverlap_web.js";

const COLOURS = ["#1f5fbf", "#c0392b", "#27ae60", "#222222", "#8e44ad", "#999999"];
const $ = (id) => document.getElementById(id);

function grid(start, stop, n) {
  return Float64Array.from({ length: n }, (_, i) => start + (stop - start) * i / (n - 1));
}

function draw(canvas, xs, series, xLabel, yLabel) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = { l: 44, r: 10, t: 10, b: 34 };
  const x0 = xs[0], x1 = xs[xs.length - 1];
  const sx = (x) => pad.l + (x - x0) / (x1 - x0) * (w - pad.l - pad.r);
  const sy = (y) => h - pad.b - Math.min(Math.max(y, 0), 1) * (h - pad.t - pad.b);
  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = "#ddd";
  ctx.fillStyle = "#222";
  ctx.font = "11px sans-serif";
  for (let i = 0; i <= 5; i++) {
    const t = i / 5;
    ctx.beginPath();
    ctx.moveTo(pad.l, sy(t)); ctx.lineTo(w - pad.r, sy(t));
    ctx.moveTo(sx(x0 + t * (x1 - x0)), pad.t); ctx.lineTo(sx(x0 + t * (x1 - x0)), h - pad.b);
    ctx.stroke();
    ctx.fillText(t.toFixed(1), 14, sy(t) + 4);
    ctx.fillText((x0 + t * (x1 - x0)).toFixed(2), sx(x0 + t * (x1 - x0)) - 10, h - pad.b + 14);
  }
  ctx.fillText(xLabel, w / 2, h - 4);
  ctx.fillText(yLabel, pad.l + 4, pad.t + 12);
  series.forEach(({ ys, colour }) => {
    ctx.strokeStyle = colour;
    ctx.lineWidth = 1.6;
    ctx.beginPath();
    ys.forEach((y, i) => (i ? ctx.lineTo(sx(xs[i]), sy(y)) : ctx.moveTo(sx(xs[i]), sy(y))));
    ctx.stroke();
  });
  ctx.lineWidth = 1;
}

function legend(el, names) {
  el.innerHTML = names.map((n, i) => `<span style="color:${COLOURS[i % COLOURS.length]}">■ ${n}</span>`).join("");
}

function split(flat) {
  const f = [], c = [];
  for (let i = 0; i < flat.length; i += 2) { f.push(flat[i]); c.push(flat[i + 1]); }
  return [f, c];
}

function updateDiscrete() {
  const points = Number($("d-points").value);
  $("d-points-out").value = points;
  const gammas = grid(0, 1, 51);
  const codes = [...document.querySelectorAll("input[name=d-code]:checked")].map((e) => e.value);
  const over = [], conc = [];
  codes.forEach((code, i) => {
    const [f, c] = split(codeCurves(code, gammas, points));
    over.push({ ys: f, colour: COLOURS[i % COLOURS.length] });
    conc.push({ ys: c, colour: COLOURS[i % COLOURS.length] });
  });
  draw($("d-overlap"), gammas, over, "γ", "F_CW");
  draw($("d-concurrence"), gammas, conc, "γ", "concurrence");
  legend($("d-legend"), codes);
}

function updateCat() {
  const gamma = Number($("c-gamma").value);
  $("c-gamma-out").value = gamma.toFixed(2);
  const ideal = $("c-ideal").checked;
  const alphas = grid(0.05, 3, 60);
  const modes = [1, 3, 5, 11, 51];
  const over = [], conc = [];
  modes.forEach((n, i) => {
    const [f, c] = split(catCurves(n, gamma, alphas, ideal, 256));
    over.push({ ys: f, colour: COLOURS[i] });
    conc.push({ ys: c, colour: COLOURS[i] });
  });
  draw($("c-overlap"), alphas, over, "|α|", "F_CW");
  draw($("c-concurrence"), alphas, conc, "|α|", "concurrence");
  legend($("c-legend"), modes.map((n) => (n === 1 ? "direct" : `N = ${n}`)));
}

function updateGaussian() {
  const v = (id) => Number($(id).value);
  try {
    const [f, fp] = gaussianPair(v("g-n1"), v("g-r1"), v("g-p1"), v("g-n2"), v("g-r2"), v("g-p2"), v("g-tau"), v("g-nadd"));
    $("g-f").value = f.toFixed(6);
    $("g-fp").value = fp.toFixed(6);
    $("g-d").value = (fp - f).toExponential(3);
  } catch (e) {
    $("g-f").value = $("g-fp").value = $("g-d").value = String(e);
  }
}

await init();
document.querySelectorAll("#d-points, input[name=d-code]").forEach((e) => e.addEventListener("input", updateDiscrete));
document.querySelectorAll("#c-gamma, #c-ideal").forEach((e) => e.addEventListener("input", updateCat));
document.querySelectorAll("[id^=g-]").forEach((e) => e.tagName === "INPUT" && e.addEventListener("input", updateGaussian));
updateDiscrete();
updateCat();
updateGaussian();
$("status").textContent = "ready";
