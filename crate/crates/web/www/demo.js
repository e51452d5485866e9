// Plain-JS driver for the spinbell wasm demo. Expects the wasm-bindgen
// output of spinbell-web in ./pkg (see the README build steps).

import init, {
  eigenstate_sweep,
  thermal_cut,
  critical_temperature,
  effective_potential_curve,
} from "./pkg/spinbell_web.js";

const PALETTE = ["#111", "#c0392b", "#27a844", "#2464c4", "#b0269c",
                 "#c07c10", "#0ca8a8", "#666", "#8b4513", "#4b0082",
                 "#2f4f4f", "#dc143c", "#556b2f"];

function frame(ctx, w, h, pad, xMin, xMax, yMin, yMax, xLabel, yLabel) {
  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, pad, w - 2 * pad, h - 2 * pad);
  ctx.fillStyle = "#444";
  ctx.font = "12px system-ui";
  ctx.fillText(xLabel, w / 2, h - 6);
  ctx.save();
  ctx.translate(12, h / 2);
  ctx.rotate(-Math.PI / 2);
  ctx.fillText(yLabel, 0, 0);
  ctx.restore();
  ctx.fillText(xMin.toFixed(2), pad, h - pad + 14);
  ctx.fillText(xMax.toFixed(2), w - pad - 24, h - pad + 14);
  ctx.fillText(yMax.toFixed(1), pad - 28, pad + 10);
  ctx.fillText(yMin.toFixed(1), pad - 28, h - pad);
  const sx = (x) => pad + ((x - xMin) / (xMax - xMin)) * (w - 2 * pad);
  const sy = (y) => h - pad - ((y - yMin) / (yMax - yMin)) * (h - 2 * pad);
  // zero line for Q plots
  if (yMin < 0 && yMax > 0) {
    ctx.strokeStyle = "#ddd";
    ctx.beginPath();
    ctx.moveTo(pad, sy(0));
    ctx.lineTo(w - pad, sy(0));
    ctx.stroke();
  }
  return { sx, sy };
}

function polyline(ctx, pts, color, dash = []) {
  ctx.strokeStyle = color;
  ctx.setLineDash(dash);
  ctx.beginPath();
  let started = false;
  for (const [x, y] of pts) {
    if (!Number.isFinite(y)) { started = false; continue; }
    if (!started) { ctx.moveTo(x, y); started = true; }
    else ctx.lineTo(x, y);
  }
  ctx.stroke();
  ctx.setLineDash([]);
}

function drawEigenstates() {
  const L = Number(document.getElementById("eigL").value);
  const gamma = Number(document.getElementById("eigGamma").value);
  const steps = 151;
  const data = eigenstate_sweep(L, gamma, 0, 1.5, steps);
  const width = L + 2;
  const canvas = document.getElementById("eigPlot");
  const ctx = canvas.getContext("2d");
  let yMin = -L - 0.5, yMax = L - 2 + 0.5;
  const { sx, sy } = frame(ctx, canvas.width, canvas.height, 40, 0, 1.5,
                           yMin, yMax, "field h", "Q");
  for (let v = 0; v <= L; v++) {
    const pts = [];
    for (let i = 0; i < steps; i++) {
      const h = data[i * width];
      const q = data[i * width + 1 + v];
      pts.push([sx(h), Number.isFinite(q) ? sy(Math.max(q, yMin)) : NaN]);
    }
    polyline(ctx, pts, PALETTE[v % PALETTE.length]);
  }
}

function drawThermal() {
  const L = Number(document.getElementById("thL").value);
  const h = Number(document.getElementById("thH").value);
  const steps = 100;
  const data = thermal_cut(L, 1, h, 0.005, 0.6, steps);
  const canvas = document.getElementById("thPlot");
  const ctx = canvas.getContext("2d");
  const yMax = L - 2 + 1;
  const yMin = -6;
  const { sx, sy } = frame(ctx, canvas.width, canvas.height, 40, 0, 0.6,
                           yMin, yMax, "temperature T", "Q");
  const series = [[], [], []];
  for (let i = 0; i < steps; i++) {
    const t = data[i * 4];
    for (let s = 0; s < 3; s++) {
      const q = data[i * 4 + 1 + s];
      series[s].push([sx(t), Number.isFinite(q) && q > yMin ? sy(q) : NaN]);
    }
  }
  polyline(ctx, series[2], "#2464c4", [8, 4, 2, 4]);
  polyline(ctx, series[1], "#c0392b", [6, 4]);
  polyline(ctx, series[0], "#111");
  const tc = critical_temperature(h);
  if (tc > 0) {
    ctx.fillStyle = "#2464c4";
    ctx.beginPath();
    ctx.arc(sx(tc), sy(0), 4, 0, 2 * Math.PI);
    ctx.fill();
  }
}

function drawPotential() {
  const h = Number(document.getElementById("potH").value);
  const points = 241;
  const data = effective_potential_curve(h, points);
  const canvas = document.getElementById("potPlot");
  const ctx = canvas.getContext("2d");
  let vMin = Infinity, vMax = -Infinity;
  for (let i = 0; i < points; i++) {
    vMin = Math.min(vMin, data[2 * i + 1]);
    vMax = Math.max(vMax, data[2 * i + 1]);
  }
  const padV = 0.1 * (vMax - vMin + 0.1);
  const { sx, sy } = frame(ctx, canvas.width, canvas.height, 40, -1, 1,
                           vMin - padV, vMax + padV, "normalized magnetization z", "V_eff");
  const pts = [];
  for (let i = 0; i < points; i++) pts.push([sx(data[2 * i]), sy(data[2 * i + 1])]);
  polyline(ctx, pts, "#111");
  const z0 = data[2 * points];
  const v0 = data[2 * points + 1];
  if (Number.isFinite(z0)) {
    ctx.fillStyle = "#c0392b";
    for (const z of [-z0, z0]) {
      ctx.beginPath();
      ctx.arc(sx(z), sy(v0), 4, 0, 2 * Math.PI);
      ctx.fill();
    }
  }
}

async function main() {
  await init();
  const bind = (id, out, fn) => {
    const el = document.getElementById(id);
    el.addEventListener("input", () => {
      document.getElementById(out).textContent = el.value;
    });
    if (fn) el.addEventListener("change", fn);
  };
  bind("eigL", "eigLv");
  bind("thL", "thLv");
  bind("thH", "thHv");
  bind("potH", "potHv", drawPotential);
  document.getElementById("potH").addEventListener("input", drawPotential);
  document.getElementById("eigRun").addEventListener("click", drawEigenstates);
  document.getElementById("thRun").addEventListener("click", drawThermal);
  drawEigenstates();
  drawThermal();
  drawPotential();
}

main();
