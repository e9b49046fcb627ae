import { formatPercent } from "./format.js";

/**
 * Confidence selector constrained to the question's allowed band.
 *
 * The slider runs in whole percentage points from the chance level up to the
 * cap (99% by default), and value() re-clamps whatever the DOM holds, so the
 * control cannot emit a probability outside [chanceLevel, cap].
 */
export class ConfidenceControl {
  readonly element: HTMLDivElement;
  private readonly slider: HTMLInputElement;
  private readonly label: HTMLSpanElement;
  private readonly minPercent: number;
  private readonly maxPercent: number;

  constructor(chanceLevel: number, cap: number, stepPercent = 1) {
    this.minPercent = Math.ceil(chanceLevel * 100);
    this.maxPercent = Math.floor(cap * 100);
    if (this.maxPercent < this.minPercent) {
      throw new Error(`empty confidence band [${chanceLevel}, ${cap}]`);
    }

    this.element = document.createElement("div");
    this.element.className = "confidence-control";

    this.slider = document.createElement("input");
    this.slider.type = "range";
    this.slider.min = String(this.minPercent);
    this.slider.max = String(this.maxPercent);
    this.slider.step = String(stepPercent);
    this.slider.value = String(this.minPercent);
    this.slider.className = "confidence-slider";

    this.label = document.createElement("span");
    this.label.className = "confidence-label";

    const caption = document.createElement("span");
    caption.className = "confidence-caption";
    caption.textContent = "confidence ";

    this.slider.addEventListener("input", () => this.refreshLabel());
    this.refreshLabel();

    this.element.append(caption, this.slider, this.label);
  }

  private clampedPercent(): number {
    const raw = Number(this.slider.value);
    if (Number.isNaN(raw)) return this.minPercent;
    return Math.min(Math.max(Math.round(raw), this.minPercent), this.maxPercent);
  }

  private refreshLabel(): void {
    this.label.textContent = formatPercent(this.clampedPercent() / 100);
  }

  /** Stated confidence as a probability, always inside the allowed band. */
  value(): number {
    return this.clampedPercent() / 100;
  }

  set(probability: number): void {
    this.slider.value = String(Math.round(probability * 100));
    this.refreshLabel();
  }
}
