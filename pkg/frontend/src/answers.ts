import type { QuestionView, Selection } from "./types.js";

export type ChoiceRead =
  | { ok: true; selection: Selection }
  | { ok: false; message: string };

export type IntervalRead =
  | { ok: true; lower: number; upper: number }
  | { ok: false; message: string };

export interface ChoiceAnswerControl {
  element: HTMLElement;
  read(): ChoiceRead;
}

export interface IntervalAnswerControl {
  element: HTMLElement;
  read(): IntervalRead;
}

let uniqueId = 0;

function radioGroup(labels: string[], name: string): {
  element: HTMLElement;
  selectedIndex(): number | null;
} {
  const wrapper = document.createElement("div");
  wrapper.className = "answer-options";
  const inputs: HTMLInputElement[] = [];
  labels.forEach((text, index) => {
    const id = `${name}-${index}-${uniqueId++}`;
    const row = document.createElement("label");
    row.className = "answer-option";
    row.htmlFor = id;
    const input = document.createElement("input");
    input.type = "radio";
    input.name = name;
    input.id = id;
    input.value = String(index);
    inputs.push(input);
    const caption = document.createElement("span");
    caption.textContent = text;
    row.append(input, caption);
    wrapper.append(row);
  });
  return {
    element: wrapper,
    selectedIndex: () => {
      const chosen = inputs.findIndex((input) => input.checked);
      return chosen === -1 ? null : chosen;
    },
  };
}

export function buildChoiceControl(question: QuestionView): ChoiceAnswerControl {
  switch (question.kind) {
    case "true_false": {
      const group = radioGroup(["True", "False"], `q-${question.id}`);
      return {
        element: group.element,
        read: () => {
          const index = group.selectedIndex();
          if (index === null) return { ok: false, message: "Pick true or false." };
          return { ok: true, selection: index === 0 };
        },
      };
    }
    case "choose_1_of_n": {
      const group = radioGroup(question.options ?? [], `q-${question.id}`);
      return {
        element: group.element,
        read: () => {
          const index = group.selectedIndex();
          if (index === null) return { ok: false, message: "Pick an option." };
          return { ok: true, selection: index };
        },
      };
    }
    case "choose_k_of_n": {
      const k = question.k ?? 1;
      const wrapper = document.createElement("div");
      wrapper.className = "answer-options";
      const boxes: HTMLInputElement[] = [];
      (question.options ?? []).forEach((text, index) => {
        const row = document.createElement("label");
        row.className = "answer-option";
        const box = document.createElement("input");
        box.type = "checkbox";
        box.value = String(index);
        boxes.push(box);
        const caption = document.createElement("span");
        caption.textContent = text;
        row.append(box, caption);
        wrapper.append(row);
      });
      return {
        element: wrapper,
        read: () => {
          const picked = boxes
            .map((box, index) => (box.checked ? index : -1))
            .filter((index) => index >= 0);
          if (picked.length !== k) {
            return { ok: false, message: `Pick exactly ${k} options.` };
          }
          return { ok: true, selection: picked };
        },
      };
    }
    case "free_text": {
      const input = document.createElement("input");
      input.type = "text";
      input.className = "answer-text";
      return {
        element: input,
        read: () => {
          if (input.value.trim() === "") return { ok: false, message: "Type an answer." };
          return { ok: true, selection: input.value };
        },
      };
    }
    case "numeric_exact": {
      const input = document.createElement("input");
      input.type = "number";
      input.className = "answer-number";
      return {
        element: input,
        read: () => {
          const value = Number(input.value);
          if (input.value.trim() === "" || Number.isNaN(value)) {
            return { ok: false, message: "Enter a number." };
          }
          return { ok: true, selection: value };
        },
      };
    }
    default:
      throw new Error(`not a choice question: ${question.kind}`);
  }
}

export function buildIntervalControl(question: QuestionView): IntervalAnswerControl {
  const wrapper = document.createElement("div");
  wrapper.className = "interval-inputs";
  const lower = document.createElement("input");
  lower.type = "number";
  lower.className = "interval-lower";
  lower.placeholder = "lower bound";
  const upper = document.createElement("input");
  upper.type = "number";
  upper.className = "interval-upper";
  upper.placeholder = "upper bound";
  const dash = document.createElement("span");
  dash.textContent = " to ";
  wrapper.append(lower, dash, upper);

  const magnitudeScored = question.kind === "interval_magnitude";
  return {
    element: wrapper,
    read: () => {
      const lo = Number(lower.value);
      const hi = Number(upper.value);
      if (lower.value.trim() === "" || upper.value.trim() === "" ||
          Number.isNaN(lo) || Number.isNaN(hi)) {
        return { ok: false, message: "Enter both bounds." };
      }
      if (lo > hi) {
        return { ok: false, message: "Lower bound must not exceed the upper bound." };
      }
      if (magnitudeScored && lo <= 0) {
        return { ok: false, message: "Bounds must be positive on this deck." };
      }
      return { ok: true, lower: lo, upper: hi };
    },
  };
}
