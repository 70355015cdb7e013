import init, { fidelity_curves, recursion_table, oracle_deviation } from "./pkg/piphase_wasm.js";

const COLORS = { free_decay: "#1f77b4", zeno: "#d62728", dd: "#2ca02c", finite: "#ff7f0e" };
const ids = ["lambda", "omega", "tau", "n", "tmax"];
const $ = (id) => document.getElementById(id);

function inputs() {
  const v = Object.fromEntries(ids.map((id) => [id, Number($(id).value)]));
  for (const id of ids) $(`${id}-v`).textContent = v[id];
  return v;
}

function draw(curves, tMax) {
  const canvas = $("plot");
  const ctx = canvas.getContext("2d");
  const [w, h, pad] = [canvas.width, canvas.height, 45];
  const series = Object.entries(COLORS)
    .map(([name, color]) => [name, color, curves[name]])
    .filter(([, , ys]) => ys.length > 0);
  const yMin = Math.min(...series.flatMap(([, , ys]) => Array.from(ys)));
  const lo = Math.max(0, Math.floor(yMin * 20) / 20);
  const px = (t) => pad + (t / tMax) * (w - 2 * pad);
  const py = (y) => h - pad - ((y - lo) / (1 - lo)) * (h - 2 * pad);

  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = "#000";
  ctx.strokeRect(pad, pad, w - 2 * pad, h - 2 * pad);
  ctx.fillStyle = "#000";
  ctx.font = "12px sans-serif";
  ctx.fillText(lo.toFixed(2), 5, h - pad);
  ctx.fillText("1.00", 5, pad + 4);
  ctx.fillText("0", pad, h - pad + 16);
  ctx.fillText(tMax.toFixed(1), w - pad - 10, h - pad + 16);

  const times = curves.times;
  for (const [, color, ys] of series) {
    ctx.strokeStyle = color;
    ctx.lineWidth = 1.5;
    ctx.beginPath();
    ys.forEach((y, k) => (k ? ctx.lineTo(px(times[k]), py(y)) : ctx.moveTo(px(times[k]), py(y))));
    ctx.stroke();
  }
  $("legend").innerHTML = series
    .map(([name, color]) => `<span style="color:${color}">&#9644; ${name}</span>`)
    .join("");
}

function update() {
  const v = inputs();
  $("deviation").textContent = "";
  try {
    const curves = fidelity_curves(v.lambda, v.omega, v.tau, v.n, v.tmax, 1001);
    draw(curves, v.tmax);
    curves.free();
    $("table").textContent = recursion_table(v.lambda, v.omega, v.tau, Math.ceil(v.tmax / v.tau) + 1);
    $("error").textContent = "";
  } catch (e) {
    $("error").textContent = e;
  }
}

function check() {
  const v = inputs();
  try {
    const dev = oracle_deviation(v.lambda, v.omega, v.tau, v.tmax, 1e-4);
    $("deviation").textContent = `max |closed form - integration| = ${dev.toExponential(2)}`;
  } catch (e) {
    $("deviation").textContent = `error: ${e}`;
  }
}

await init();
for (const id of ids) $(id).addEventListener("input", update);
$("check").addEventListener("click", check);
update();
