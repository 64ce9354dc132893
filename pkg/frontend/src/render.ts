import type { BoardViewModel } from './state.js';

// HTML string builders.  Pure functions of the view model so tests can
// assert exactly what is shown for a given service response.

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

export interface UiState {
  busy: boolean;
  hintsOn: boolean;
  toast: string | null;
  error: string | null;
}

const SAMPLE_INSTANCE = `{
  "tasks": 2,
  "agents": [
    {"id": "X", "eff": [4, 7]},
    {"id": "Y", "eff": [5, 5]},
    {"id": "Z", "eff": [0, 4]}
  ]
}`;

export function renderLanding(): string {
  return `
  <form class="landing" data-form="start">
    <h1>draft table</h1>
    <label>pool (JSON instance)
      <textarea name="instance" rows="10" spellcheck="false">${escapeHtml(SAMPLE_INSTANCE)}</textarea>
    </label>
    <label>you play
      <select name="side"><option value="alice">alice</option><option value="bob">bob</option></select>
    </label>
    <label>engine
      <select name="policy"><option value="exact">exact</option><option value="budgeted">budgeted</option></select>
    </label>
    <button type="submit" data-action="start">start draft</button>
  </form>`;
}

function renderStatus(vm: BoardViewModel): string {
  const { alice, bob, score } = vm.provisional;
  const turn =
    vm.status === 'finished'
      ? 'draft over'
      : vm.status === 'engine_thinking'
        ? 'engine thinking&hellip;'
        : `${vm.toMove} to move${vm.canPick ? ' (you)' : ''}`;
  return `
  <div class="status">
    <span class="side">you are ${vm.humanSide}</span>
    <span class="turn">${turn}</span>
    <span class="provisional">provisional <b data-field="alice">${alice}</b> &minus; <b data-field="bob">${bob}</b> = <b data-field="score">${score}</b></span>
    <label class="hints-toggle"><input type="checkbox" data-action="toggle-hints"> hints</label>
  </div>`;
}

function renderBoard(vm: BoardViewModel, ui: UiState): string {
  const sortMark = (key: string) =>
    (vm.sort.by === 'max' && key === 'max') ||
    (vm.sort.by === 'task' && key === `task:${vm.sort.task}`)
      ? ' sorted'
      : '';
  const headers = Array.from({ length: vm.tasks }, (_, t) => {
    return `<th><button class="sort${sortMark(`task:${t}`)}" data-sort="task:${t}">task ${t + 1}</button></th>`;
  }).join('');

  const rows = vm.rows
    .map((row) => {
      const cells = row.cells
        .map((c) => `<td class="eff">${escapeHtml(c)}</td>`)
        .join('');
      const badges = row.badges
        .map((b) => `<span class="badge badge-${escapeHtml(b)}">${escapeHtml(b)}</span>`)
        .join(' ');
      const hint = ui.hintsOn && row.hint !== null ? row.hint : '';
      const note = row.whatIf !== null ? `<span class="whatif" title="score after picking">&rarr; ${row.whatIf}</span>` : '';
      const pick = row.free
        ? `<button class="pick" data-pick="${escapeHtml(row.id)}"${vm.canPick && !ui.busy ? '' : ' disabled'}>pick</button>`
        : `<span class="owner">${row.owner}</span>`;
      return `<tr class="${row.free ? 'free' : `taken owner-${row.owner}`}" data-agent="${escapeHtml(row.id)}">
        <th scope="row">${escapeHtml(row.id)}</th>${cells}
        <td class="hint">${hint} ${badges} ${note}</td>
        <td class="act">${pick}</td>
      </tr>`;
    })
    .join('\n');

  return `
  <table class="board">
    <thead><tr>
      <th><button class="sort${sortMark('max')}" data-sort="max">agent</button></th>
      ${headers}<th>hint</th><th></th>
    </tr></thead>
    <tbody>${rows}</tbody>
  </table>`;
}

function renderMoveLog(vm: BoardViewModel): string {
  if (vm.moveLog.length === 0) return '<p class="log empty">no picks yet</p>';
  const items = vm.moveLog
    .map(
      (m) =>
        `<li class="log-${m.side}">${m.side} picked ${escapeHtml(m.agent)} <i>(${m.actor})</i></li>`,
    )
    .join('');
  return `<ol class="log">${items}</ol>`;
}

function renderFinal(vm: BoardViewModel): string {
  if (vm.status !== 'finished' || vm.final === null) return '';
  return `<div class="final">final score <b data-field="final">${vm.final}</b></div>`;
}

export function renderApp(vm: BoardViewModel | null, ui: UiState): string {
  const toast = ui.toast ? `<div class="toast">${escapeHtml(ui.toast)}</div>` : '';
  const error = ui.error
    ? `<div class="banner error">${escapeHtml(ui.error)} <button data-action="retry">retry</button></div>`
    : '';
  if (!vm) return `${error}${toast}${renderLanding()}`;
  return `${error}${toast}${renderStatus(vm)}${renderFinal(vm)}${renderBoard(vm, ui)}${renderMoveLog(vm)}`;
}
