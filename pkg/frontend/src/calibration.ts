import type { CalibrationBin } from "./types.js";

const SIZE = 360;
const PAD = 36;

function toX(p: number): number {
  return PAD + p * (SIZE - 2 * PAD);
}

function toY(p: number): number {
  return SIZE - PAD - p * (SIZE - 2 * PAD);
}

/**
 * Calibration chart: fraction-correct (y) against stated confidence (x),
 * one point per non-empty bin exactly as returned by the API, with the
 * y = x diagonal for reference. Each point carries its bin's numbers as
 * data attributes, so what is plotted is directly inspectable.
 */
export function renderCalibrationChart(bins: CalibrationBin[]): SVGSVGElement {
  const svgNS = "http://www.w3.org/2000/svg";
  const svg = document.createElementNS(svgNS, "svg");
  svg.setAttribute("viewBox", `0 0 ${SIZE} ${SIZE}`);
  svg.setAttribute("width", String(SIZE));
  svg.setAttribute("height", String(SIZE));
  svg.classList.add("calibration-chart");

  const frame = document.createElementNS(svgNS, "rect");
  frame.setAttribute("x", String(PAD));
  frame.setAttribute("y", String(PAD));
  frame.setAttribute("width", String(SIZE - 2 * PAD));
  frame.setAttribute("height", String(SIZE - 2 * PAD));
  frame.setAttribute("class", "chart-frame");
  svg.append(frame);

  const diagonal = document.createElementNS(svgNS, "line");
  diagonal.setAttribute("x1", String(toX(0)));
  diagonal.setAttribute("y1", String(toY(0)));
  diagonal.setAttribute("x2", String(toX(1)));
  diagonal.setAttribute("y2", String(toY(1)));
  diagonal.setAttribute("class", "diagonal");
  svg.append(diagonal);

  for (const tick of [0, 0.25, 0.5, 0.75, 1]) {
    const label = document.createElementNS(svgNS, "text");
    label.setAttribute("x", String(toX(tick)));
    label.setAttribute("y", String(SIZE - PAD / 3));
    label.setAttribute("class", "tick-label");
    label.textContent = tick.toFixed(2);
    svg.append(label);
    const side = document.createElementNS(svgNS, "text");
    side.setAttribute("x", String(PAD / 4));
    side.setAttribute("y", String(toY(tick)));
    side.setAttribute("class", "tick-label");
    side.textContent = tick.toFixed(2);
    svg.append(side);
  }

  for (const bin of bins) {
    if (bin.count === 0 || bin.mean_confidence === null || bin.frequency_correct === null) {
      continue;
    }
    const point = document.createElementNS(svgNS, "circle");
    point.setAttribute("cx", String(toX(bin.mean_confidence)));
    point.setAttribute("cy", String(toY(bin.frequency_correct)));
    point.setAttribute("r", "5");
    point.setAttribute("class", "calibration-point");
    point.dataset.lower = String(bin.lower);
    point.dataset.upper = String(bin.upper);
    point.dataset.count = String(bin.count);
    point.dataset.confidence = String(bin.mean_confidence);
    point.dataset.frequency = String(bin.frequency_correct);
    svg.append(point);
  }
  return svg;
}
